#include "sslab/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sslab/errors.hpp"

namespace sslab {

namespace {

constexpr double kPi = 3.14159265358979323846;

int wrap(int i, int n) {
    int r = i % n;
    return r < 0 ? r + n : r;
}

}  // namespace

bool ModuliPoint::is_reduced(double tol) const {
    if (b <= 0.0) return false;
    if (kind == SurfaceKind::Klein) return true;
    return a >= -tol && a <= 0.5 + tol && a * a + b * b >= 1.0 - tol;
}

std::array<int, 4> DiscreteDomain::neighbors(int i, int j) const {
    std::array<int, 4> out{};
    if (gluing == Gluing::TorusShift) {
        out[0] = index(wrap(i + 1, nx), j);
        out[1] = index(wrap(i - 1, nx), j);
        out[2] = (j + 1 < ny) ? index(i, j + 1) : index(wrap(i - shift_cells, nx), 0);
        out[3] = (j > 0) ? index(i, j - 1) : index(wrap(i + shift_cells, nx), ny - 1);
    } else {
        // Right/left edges re-enter at the reflected row; y is periodic.
        out[0] = (i + 1 < nx) ? index(i + 1, j) : index(0, wrap(ny - j, ny));
        out[1] = (i > 0) ? index(i - 1, j) : index(nx - 1, wrap(ny - j, ny));
        out[2] = index(i, wrap(j + 1, ny));
        out[3] = index(i, wrap(j - 1, ny));
    }
    return out;
}

DiscreteDomain torus_domain(double a, double b, int nx, int ny, double snap_tol) {
    if (b <= 0.0) throw Error("torus_domain: b must be positive");
    if (nx < 4 || ny < 4) throw Error("torus_domain: need nx, ny >= 4");
    const double cells = a * nx;
    const double snapped = std::round(cells);
    if (std::abs(cells - snapped) > snap_tol) {
        throw SnapViolation("torus_domain: lattice shift a*nx = " + std::to_string(cells) +
                            " is not grid-representable within snap tolerance");
    }
    DiscreteDomain d;
    d.width = 1.0;
    d.height = b;
    d.nx = nx;
    d.ny = ny;
    d.gluing = Gluing::TorusShift;
    d.shift_cells = wrap(static_cast<int>(snapped), nx);
    return d;
}

DiscreteDomain klein_domain(double b, int nx, int ny) {
    if (b <= 0.0) throw Error("klein_domain: b must be positive");
    if (nx < 4 || ny < 4) throw Error("klein_domain: need nx, ny >= 4");
    DiscreteDomain d;
    d.width = kPi;
    d.height = b;
    d.nx = nx;
    d.ny = ny;
    d.gluing = Gluing::KleinReflect;
    d.shift_cells = 0;
    return d;
}

namespace {

/// Collect every dual-lattice value <= cutoff, with multiplicity, then
/// grow the cutoff until `count` values exist. The enumeration ranges
/// are derived from the cutoff so arbitrary (a, b) are handled.
std::vector<double> torus_values_up_to(double a, double b, double cutoff) {
    std::vector<double> vals;
    const double four_pi_sq = 4.0 * kPi * kPi;
    const int mmax = static_cast<int>(std::floor(std::sqrt(cutoff / four_pi_sq))) + 1;
    for (int m = -mmax; m <= mmax; ++m) {
        const double mm = four_pi_sq * m * m;
        if (mm > cutoff) continue;
        const double span = std::sqrt((cutoff - mm) / four_pi_sq) * b;
        const int nlo = static_cast<int>(std::floor(m * a - span)) - 1;
        const int nhi = static_cast<int>(std::ceil(m * a + span)) + 1;
        for (int n = nlo; n <= nhi; ++n) {
            const double q = (n - m * a) / b;
            const double v = four_pi_sq * (m * m + q * q);
            if (v <= cutoff) vals.push_back(v);
        }
    }
    std::sort(vals.begin(), vals.end());
    return vals;
}

}  // namespace

FlatSpectrum flat_torus_spectrum(double a, double b, int count) {
    if (b <= 0.0) throw Error("flat_torus_spectrum: b must be positive");
    if (count < 1) throw Error("flat_torus_spectrum: count must be >= 1");
    double cutoff = 4.0 * kPi * kPi * std::max(1.0, 1.0 / (b * b));
    std::vector<double> vals = torus_values_up_to(a, b, cutoff);
    while (static_cast<int>(vals.size()) < count) {
        cutoff *= 2.0;
        vals = torus_values_up_to(a, b, cutoff);
    }
    vals.resize(count);
    return FlatSpectrum{std::move(vals), b};
}

namespace {

std::vector<double> klein_values_up_to(double b, double cutoff) {
    std::vector<double> vals;
    const double qstep = 2.0 * kPi / b;
    const int mmax = static_cast<int>(std::floor(std::sqrt(cutoff))) + 1;
    const int nmax = static_cast<int>(std::floor(std::sqrt(cutoff) / qstep)) + 1;
    for (int m = 0; m <= mmax; ++m) {
        const bool even = (m % 2 == 0);
        for (int n = even ? 0 : 1; n <= nmax; ++n) {
            const double v = double(m) * m + qstep * n * qstep * n;
            if (v > cutoff) break;
            // x-phase degree of freedom doubles every m > 0 mode.
            vals.push_back(v);
            if (m > 0) vals.push_back(v);
        }
    }
    std::sort(vals.begin(), vals.end());
    return vals;
}

}  // namespace

FlatSpectrum flat_klein_spectrum(double b, int count) {
    if (b <= 0.0) throw Error("flat_klein_spectrum: b must be positive");
    if (count < 1) throw Error("flat_klein_spectrum: count must be >= 1");
    double cutoff = std::max(4.0, 4.0 * kPi * kPi / (b * b));
    std::vector<double> vals = klein_values_up_to(b, cutoff);
    while (static_cast<int>(vals.size()) < count) {
        cutoff *= 2.0;
        vals = klein_values_up_to(b, cutoff);
    }
    vals.resize(count);
    return FlatSpectrum{std::move(vals), kPi * b};
}

ModuliPoint moduli_reduce(double a, double b) {
    if (b <= 0.0) throw Error("moduli_reduce: b must be positive");
    constexpr int kMaxMoves = 64;
    int moves = 0;
    for (;;) {
        const double shift = std::round(a);
        if (shift != 0.0) {
            a -= shift;
            ++moves;
        }
        const double norm_sq = a * a + b * b;
        if (norm_sq >= 1.0) break;
        // Inversion z -> -1/z maps a+ib to (-a+ib)/|z|^2.
        a = -a / norm_sq;
        b = b / norm_sq;
        ++moves;
        if (moves > kMaxMoves) {
            throw NonConvergence("moduli_reduce: move budget exhausted", moves);
        }
    }
    if (a < 0.0) a = -a;  // conjugation: same unoriented class, same spectrum
    return ModuliPoint{SurfaceKind::Torus, a, b};
}

}  // namespace sslab
