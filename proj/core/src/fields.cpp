#include "sslab/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sslab/errors.hpp"

namespace sslab {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sech_sq(double s) {
    const double e = std::exp(-std::abs(s));
    const double c = 2.0 * e / (1.0 + e * e);
    return c * c;
}

}  // namespace

double ConformalFactor::total_mass() const {
    double sum = 0.0;
    for (double v : rho.values) sum += v;
    return sum * domain.cell_area();
}

ConformalFactor uniform_factor(const DiscreteDomain& domain) {
    ConformalFactor f;
    f.domain = domain;
    f.rho = GridField(domain.nx, domain.ny, 1.0 / domain.area());
    return f;
}

ConformalFactor normalize_area(ConformalFactor f) {
    const double mass = f.total_mass();
    if (!(mass > 0.0)) throw ZeroMass("normalize_area: factor integrates to nonpositive mass");
    for (double& v : f.rho.values) v /= mass;
    return f;
}

ConformalFactor bubble_factor(const DiscreteDomain& domain, double t, double floor_frac) {
    if (domain.gluing != Gluing::TorusShift)
        throw Error("bubble_factor: requires a torus domain");
    if (t < 1.0) throw Error("bubble_factor: t must be >= 1");
    if (floor_frac < 0.0 || floor_frac >= 1.0 + 1e-15)
        throw Error("bubble_factor: floor_frac must lie in [0, 1]");

    // Pullback of the round-sphere area element under the dilated
    // cylinder coordinate, radial part t*exp(-2*pi*y); the cell is
    // evaluated literally on y in [0, height), so the dilation slides
    // the bubble away from the seam instead of translating it.
    ConformalFactor f;
    f.domain = domain;
    f.rho = GridField(domain.nx, domain.ny);
    const double log_t = std::log(t);
    double mass = 0.0;
    for (int j = 0; j < domain.ny; ++j) {
        const double y = j * domain.hy();
        const double density = 4.0 * kPi * kPi * sech_sq(log_t - 2.0 * kPi * y);
        for (int i = 0; i < domain.nx; ++i) f.rho(i, j) = density;
        mass += density * domain.nx;
    }
    mass *= domain.cell_area();
    if (!(mass > 0.0)) throw ZeroMass("bubble_factor: degenerate bubble mass");

    const double uniform_level = 1.0 / domain.area();
    for (double& v : f.rho.values)
        v = (1.0 - floor_frac) * (v / mass) + floor_frac * uniform_level;
    f.floor = floor_frac * uniform_level;
    return normalize_area(std::move(f));
}

namespace {

double wrapped_delta(double d, double period) {
    d = std::fmod(d, period);
    if (d > 0.5 * period) d -= period;
    if (d < -0.5 * period) d += period;
    return d;
}

/// Squared distance to the center through the nearest deck translate of
/// a sheared torus cell.
double torus_dist_sq(const DiscreteDomain& d, double x, double y, double cx, double cy) {
    const double a = d.shift_cells * d.hx();
    double best = std::numeric_limits<double>::max();
    for (int k = -1; k <= 1; ++k) {
        const double dy = y - cy - k * d.height;
        const double dx = wrapped_delta(x - cx - k * a, d.width);
        best = std::min(best, dx * dx + dy * dy);
    }
    return best;
}

}  // namespace

ConformalFactor blob_factor(const DiscreteDomain& domain, double cx, double cy,
                            double sigma, double floor_frac) {
    if (sigma <= 0.0) throw Error("blob_factor: sigma must be positive");
    if (floor_frac < 0.0 || floor_frac >= 1.0 + 1e-15)
        throw Error("blob_factor: floor_frac must lie in [0, 1]");

    ConformalFactor f;
    f.domain = domain;
    f.rho = GridField(domain.nx, domain.ny);
    const double inv = 0.5 / (sigma * sigma);
    for (int j = 0; j < domain.ny; ++j) {
        const double y = j * domain.hy();
        for (int i = 0; i < domain.nx; ++i) {
            const double x = i * domain.hx();
            double g = 0.0;
            if (domain.gluing == Gluing::TorusShift) {
                g = std::exp(-inv * torus_dist_sq(domain, x, y, cx, cy));
            } else {
                // Klein blob: symmetrize over the orientation-reversing
                // identification on the 2*pi-wide double cover.
                const double two_w = 2.0 * domain.width;
                const double dx1 = wrapped_delta(x - cx, two_w);
                const double dy1 = wrapped_delta(y - cy, domain.height);
                const double dx2 = wrapped_delta(x - (cx + domain.width), two_w);
                const double dy2 = wrapped_delta(y + cy, domain.height);
                g = std::exp(-inv * (dx1 * dx1 + dy1 * dy1)) +
                    std::exp(-inv * (dx2 * dx2 + dy2 * dy2));
            }
            f.rho(i, j) = g;
        }
    }
    const double mass = f.total_mass();
    if (!(mass > 0.0)) throw ZeroMass("blob_factor: blob underflowed the grid");
    const double uniform_level = 1.0 / domain.area();
    for (double& v : f.rho.values)
        v = (1.0 - floor_frac) * (v / mass) + floor_frac * uniform_level;
    f.floor = floor_frac * uniform_level;
    return normalize_area(std::move(f));
}

MassProfile mass_profile(const ConformalFactor& f) {
    MassProfile p;
    const int ny = f.domain.ny;
    p.slice_mass.resize(ny);
    p.cumulative.resize(ny);
    const double cell = f.domain.cell_area();
    double total = 0.0;
    for (int j = 0; j < ny; ++j) {
        double row = 0.0;
        for (int i = 0; i < f.domain.nx; ++i) row += f.rho(i, j);
        p.slice_mass[j] = row * cell;
        total += p.slice_mass[j];
    }
    double running = 0.0;
    for (int j = 0; j < ny; ++j) {
        running += p.slice_mass[j];
        p.cumulative[j] = running / total;
    }
    return p;
}

double max_window_mass(const MassProfile& profile, int window_rows) {
    const int ny = static_cast<int>(profile.slice_mass.size());
    if (window_rows <= 0 || ny == 0) return 0.0;
    window_rows = std::min(window_rows, ny);
    double total = 0.0;
    for (double m : profile.slice_mass) total += m;
    double window = 0.0;
    for (int j = 0; j < window_rows; ++j) window += profile.slice_mass[j];
    double best = window;
    for (int j = 0; j < ny - 1; ++j) {
        window -= profile.slice_mass[j];
        window += profile.slice_mass[(j + window_rows) % ny];
        best = std::max(best, window);
    }
    return best / total;
}

}  // namespace sslab
