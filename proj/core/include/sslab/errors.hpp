#pragma once

#include <stdexcept>
#include <string>

namespace sslab {

/// Base class for all failures raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Requested lattice shift a*nx is not representable on the grid.
struct SnapViolation : Error {
    using Error::Error;
};

/// Moduli reduction exceeded its move budget.
struct NonConvergence : Error {
    int moves = 0;
    NonConvergence(const std::string& what, int moves_) : Error(what), moves(moves_) {}
};

/// A conformal factor integrated to a nonpositive total mass.
struct ZeroMass : Error {
    using Error::Error;
};

/// Factor and domain passed to assemble() do not describe the same grid.
struct DomainMismatch : Error {
    using Error::Error;
};

/// Iterative eigensolver (or the ascent driving it) ran out of iterations.
struct NoConvergence : Error {
    double best_residual = 0.0;
    int iterations = 0;
    NoConvergence(const std::string& what, double residual, int iters)
        : Error(what), best_residual(residual), iterations(iters) {}
};

/// Rayleigh quotient of a field that vanishes after mean projection.
struct ZeroField : Error {
    using Error::Error;
};

/// Fewer samples than the 2*kmax+1 needed for an alias-free trace.
struct TooFewSamples : Error {
    using Error::Error;
};

/// Boundary trace violates the |u| <= 1 hypothesis of the energy bounds.
struct HypothesisViolation : Error {
    using Error::Error;
};

/// best_slice received an empty row range.
struct EmptyBand : Error {
    using Error::Error;
};

/// Input point is not on the sphere it is required to lie on.
struct NotOnSphere : Error {
    using Error::Error;
};

/// Measure cannot be balanced: one atom carries at least half the mass.
struct DegenerateMeasure : Error {
    using Error::Error;
};

/// Report emission could not write its output file.
struct IoError : Error {
    using Error::Error;
};

}  // namespace sslab
