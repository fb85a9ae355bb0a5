#pragma once

#include <Eigen/Sparse>
#include <cstdint>
#include <vector>

#include "sslab/fields.hpp"
#include "sslab/grid.hpp"
#include "sslab/surfaces.hpp"

namespace sslab {

/// Generalized eigenproblem K u = lambda M u on a glued grid. The
/// stiffness K is the flat 5-point Dirichlet energy and depends only on
/// the domain (conformal invariance); the conformal factor enters the
/// diagonal mass M = rho * cell_area alone.
struct SpectralProblem {
    Eigen::SparseMatrix<double> stiffness;
    Eigen::VectorXd mass;
    DiscreteDomain domain;
};

struct EigenResult {
    std::vector<double> eigenvalues;       // ascending, eigenvalues[0] == 0
    std::vector<GridField> eigenvectors;   // M-orthonormal
    std::vector<double> residuals;         // ||K u - lambda M u|| / ||M u||
};

struct SolveOptions {
    double tol = 1e-8;
    int max_iters = 300;
    std::uint64_t seed = 0x5eedULL;
};

SpectralProblem assemble(const DiscreteDomain& domain, const ConformalFactor& factor);

/// k smallest eigenpairs (the exact constant pair included as index 0).
/// Deterministic for a fixed seed; throws NoConvergence with the best
/// residual seen when the iteration budget runs out.
EigenResult eigensolve(const SpectralProblem& p, int k, double tol);
EigenResult eigensolve(const SpectralProblem& p, int k, const SolveOptions& opts);

/// Rayleigh quotient D(u) / int u^2 dg after projecting out the
/// mass-weighted mean. Throws ZeroField when nothing is left.
double rayleigh(const SpectralProblem& p, const GridField& u);

/// First-order sensitivity of lambda1 to the density, per unit density:
/// -lambda1 * u^2 for a simple lambda1, or the average of -lambda1*u_i^2
/// over the near-degenerate cluster (gap < gap_tol_rel * lambda1).
struct DensityGradient {
    GridField field;
    bool degenerate = false;
    int cluster_size = 1;
};
DensityGradient lambda1_density_gradient(const SpectralProblem& p, const EigenResult& e,
                                         double gap_tol_rel = 1e-6);

struct AscentOptions {
    int steps = 60;
    double step_size = 0.5;
    double rho_min = 0.0;          // absolute positivity floor on rho
    int max_backtracks = 20;
    int eigen_k = 6;
    double eigen_tol = 1e-7;
    std::uint64_t seed = 0x5eedULL;
};

struct AscentResult {
    ConformalFactor factor;
    std::vector<double> trace;     // lambda1 after each accepted step (trace[0] = initial)
};

/// Projected gradient ascent of lambda1 over unit-area conformal
/// factors: rho <- clip(rho + step * direction, rho_min), renormalized,
/// where direction is the density gradient with its area-weighted mean
/// removed. Backtracking keeps the trace nondecreasing or stops.
AscentResult nu_maximize(const DiscreteDomain& domain, const ConformalFactor& init,
                         int steps, double step_size, double rho_min);
AscentResult nu_maximize(const DiscreteDomain& domain, const ConformalFactor& init,
                         const AscentOptions& opts);

}  // namespace sslab
