#pragma once

#include <span>
#include <vector>

#include "sslab/grid.hpp"
#include "sslab/surfaces.hpp"

namespace sslab {

/// Truncated Fourier coefficients of a function on a circle of given
/// circumference: u(s) = mean + sum_k a_k cos(2 pi k s / c) +
/// b_k sin(2 pi k s / c).
struct FourierTrace {
    double mean = 0.0;
    std::vector<double> cos_coeffs;
    std::vector<double> sin_coeffs;
    double circumference = 2.0 * 3.14159265358979323846;

    int kmax() const { return static_cast<int>(cos_coeffs.size()); }
};

/// Discrete Fourier analysis of >= 2*kmax+1 equispaced samples.
FourierTrace fourier_trace(std::span<const double> samples, int kmax, double circumference);

/// Exact Dirichlet energy of the harmonic extension f on (0,L) x S^1
/// with f(0,.) = 0 and f(L,.) = u:
///   2 pi K^2 / L + pi sum_k k coth(kL) (a_k^2 + b_k^2).
/// Requires circumference 2 pi.
double extension_energy_exact(const FourierTrace& trace, double L);

/// Upper bound 2 pi / L + coth(L) * int |u'|^2 for traces with
/// sup|u| <= 1. Throws HypothesisViolation otherwise.
double extension_energy_bound(const FourierTrace& trace, double L);

/// Same bound for a circle of circumference r:
///   r/L + (r / 2 pi) coth(2 pi L / r) * int_0^r |u'|^2 dx.
double extension_energy_bound_general(const FourierTrace& trace, double L, double r);

/// Pointwise value of the truncated harmonic extension
///   f(x, theta) = K x / L + sum_k sinh(kx)/sinh(kL) (a_k cos + b_k sin).
double harmonic_extension_eval(const FourierTrace& trace, double L, double x, double theta);

/// Row of a horizontal band minimizing the discrete boundary energy
/// int |d_x field|^2 dx along the row. The minimum is bounded by the
/// band's Dirichlet energy divided by the band height (mean value).
struct SliceChoice {
    int row = 0;
    double boundary_energy = 0.0;
};
SliceChoice best_slice(const GridField& field, const DiscreteDomain& domain,
                       int row_begin, int row_end);

}  // namespace sslab
