#pragma once

#include <vector>

#include "sslab/grid.hpp"
#include "sslab/surfaces.hpp"

namespace sslab {

/// Positive density rho on a discrete domain, normalized so that
/// sum(rho) * cell_area == 1. Plays the role of the metric within a
/// conformal class; enters only the mass matrix of the eigenproblem.
struct ConformalFactor {
    DiscreteDomain domain;
    GridField rho;
    double floor = 0.0;

    double total_mass() const;
};

/// Row-wise mass distribution: mass per horizontal grid row and its
/// running (normalized) cumulative sum.
struct MassProfile {
    std::vector<double> slice_mass;
    std::vector<double> cumulative;
};

/// Constant density 1/(width*height); unit total area.
ConformalFactor uniform_factor(const DiscreteDomain& domain);

/// Rescale a factor to unit total area. Throws ZeroMass for
/// nonpositive input mass.
ConformalFactor normalize_area(ConformalFactor f);

/// Concentrating family on a torus domain: the density of a round
/// sphere transplanted through the cylinder coordinate and dilated by
/// t >= 1, mixed with a uniform floor and normalized. The peak sits on
/// the row y = ln(t)/(2*pi); larger t pulls the sphere further away
/// from the y = 0 seam, completing the bubble.
ConformalFactor bubble_factor(const DiscreteDomain& domain, double t, double floor_frac);

/// Gaussian-like concentration at (cx, cy) with length scale sigma,
/// made compatible with the domain's gluing (Klein factors are
/// symmetrized over the reflection), mixed with a uniform floor and
/// normalized. Used as a generic concentrated ascent seed.
ConformalFactor blob_factor(const DiscreteDomain& domain, double cx, double cy,
                            double sigma, double floor_frac);

/// Row sums of rho * cell_area plus the cumulative profile.
MassProfile mass_profile(const ConformalFactor& f);

/// Largest mass captured by any window of `window_rows` consecutive
/// rows (cyclic in j). Diagnostic for the concentration lemmas.
double max_window_mass(const MassProfile& profile, int window_rows);

}  // namespace sslab
