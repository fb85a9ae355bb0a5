#include "sslab/cylinder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sslab/errors.hpp"

namespace sslab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

double coth(double z) { return 1.0 / std::tanh(z); }

/// sinh(kx)/sinh(kL) for 0 <= x <= L without overflow.
double sinh_ratio(double kx, double kL) {
    if (kL < 1e-300) return kx == 0.0 ? 0.0 : 1.0;
    if (kL > 30.0) {
        const double num = 1.0 - std::exp(-2.0 * kx);
        const double den = 1.0 - std::exp(-2.0 * kL);
        return std::exp(kx - kL) * num / den;
    }
    return std::sinh(kx) / std::sinh(kL);
}

double reconstruct(const FourierTrace& t, double s) {
    const double omega = kTwoPi / t.circumference;
    double u = t.mean;
    for (int k = 1; k <= t.kmax(); ++k) {
        u += t.cos_coeffs[k - 1] * std::cos(k * omega * s) +
             t.sin_coeffs[k - 1] * std::sin(k * omega * s);
    }
    return u;
}

void require_bounded_by_one(const FourierTrace& t) {
    const int n = std::max(64, 16 * t.kmax());
    double sup = 0.0;
    for (int i = 0; i < n; ++i) {
        const double s = t.circumference * i / n;
        sup = std::max(sup, std::abs(reconstruct(t, s)));
    }
    if (sup > 1.0 + 1e-9)
        throw HypothesisViolation("trace violates sup|u| <= 1 (sup = " + std::to_string(sup) + ")");
}

void require_standard_circle(const FourierTrace& t) {
    if (std::abs(t.circumference - kTwoPi) > 1e-12 * kTwoPi)
        throw Error("trace must live on the circumference-2pi circle; use the general bound");
}

}  // namespace

FourierTrace fourier_trace(std::span<const double> samples, int kmax, double circumference) {
    const int n = static_cast<int>(samples.size());
    if (kmax < 0) throw Error("fourier_trace: kmax must be >= 0");
    if (circumference <= 0.0) throw Error("fourier_trace: circumference must be positive");
    if (n < 2 * kmax + 1)
        throw TooFewSamples("fourier_trace: need at least 2*kmax+1 samples, got " +
                            std::to_string(n));

    FourierTrace t;
    t.circumference = circumference;
    t.cos_coeffs.assign(kmax, 0.0);
    t.sin_coeffs.assign(kmax, 0.0);
    double mean = 0.0;
    for (double v : samples) mean += v;
    t.mean = mean / n;
    for (int k = 1; k <= kmax; ++k) {
        double a = 0.0, b = 0.0;
        for (int i = 0; i < n; ++i) {
            const double phase = kTwoPi * k * i / n;
            a += samples[i] * std::cos(phase);
            b += samples[i] * std::sin(phase);
        }
        t.cos_coeffs[k - 1] = 2.0 * a / n;
        t.sin_coeffs[k - 1] = 2.0 * b / n;
    }
    return t;
}

double extension_energy_exact(const FourierTrace& trace, double L) {
    if (L <= 0.0) throw Error("extension_energy_exact: L must be positive");
    require_standard_circle(trace);
    double e = kTwoPi * trace.mean * trace.mean / L;
    for (int k = 1; k <= trace.kmax(); ++k) {
        const double ak = trace.cos_coeffs[k - 1];
        const double bk = trace.sin_coeffs[k - 1];
        e += kPi * k * coth(k * L) * (ak * ak + bk * bk);
    }
    return e;
}

double extension_energy_bound(const FourierTrace& trace, double L) {
    if (L <= 0.0) throw Error("extension_energy_bound: L must be positive");
    require_standard_circle(trace);
    require_bounded_by_one(trace);
    double deriv_sq = 0.0;  // int |u'|^2 over the circle
    for (int k = 1; k <= trace.kmax(); ++k) {
        const double ak = trace.cos_coeffs[k - 1];
        const double bk = trace.sin_coeffs[k - 1];
        deriv_sq += kPi * k * k * (ak * ak + bk * bk);
    }
    return kTwoPi / L + coth(L) * deriv_sq;
}

double extension_energy_bound_general(const FourierTrace& trace, double L, double r) {
    if (L <= 0.0 || r <= 0.0)
        throw Error("extension_energy_bound_general: L and r must be positive");
    if (std::abs(trace.circumference - r) > 1e-12 * r)
        throw Error("extension_energy_bound_general: trace circumference must equal r");
    require_bounded_by_one(trace);
    // int_0^r |u'|^2 dx = (2 pi^2 / r) sum k^2 (a_k^2 + b_k^2)
    double deriv_sq = 0.0;
    for (int k = 1; k <= trace.kmax(); ++k) {
        const double ak = trace.cos_coeffs[k - 1];
        const double bk = trace.sin_coeffs[k - 1];
        deriv_sq += 2.0 * kPi * kPi / r * k * k * (ak * ak + bk * bk);
    }
    return r / L + r / kTwoPi * coth(kTwoPi * L / r) * deriv_sq;
}

double harmonic_extension_eval(const FourierTrace& trace, double L, double x, double theta) {
    if (L <= 0.0) throw Error("harmonic_extension_eval: L must be positive");
    if (x < 0.0 || x > L) throw Error("harmonic_extension_eval: need 0 <= x <= L");
    const double omega = kTwoPi / trace.circumference;
    double f = trace.mean * x / L;
    for (int k = 1; k <= trace.kmax(); ++k) {
        const double ak = trace.cos_coeffs[k - 1];
        const double bk = trace.sin_coeffs[k - 1];
        f += sinh_ratio(k * x, k * L) *
             (ak * std::cos(k * omega * theta) + bk * std::sin(k * omega * theta));
    }
    return f;
}

SliceChoice best_slice(const GridField& field, const DiscreteDomain& domain,
                       int row_begin, int row_end) {
    if (field.nx != domain.nx || field.ny != domain.ny)
        throw DomainMismatch("best_slice: field does not match domain grid");
    if (row_begin < 0 || row_end > domain.ny || row_end - row_begin < 1)
        throw EmptyBand("best_slice: empty or out-of-range row band");

    const double hx = domain.hx();
    SliceChoice best{row_begin, std::numeric_limits<double>::max()};
    for (int j = row_begin; j < row_end; ++j) {
        double energy = 0.0;
        for (int i = 0; i < domain.nx; ++i) {
            const int right = domain.neighbors(i, j)[0];
            const double diff = field.values[right] - field(i, j);
            energy += diff * diff / hx;
        }
        if (energy < best.boundary_energy) best = SliceChoice{j, energy};
    }
    return best;
}

}  // namespace sslab
