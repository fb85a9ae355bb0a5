#pragma once

#include <string>

#include "sslab/report.hpp"

namespace sslab {

/// Bubble ladder on a square torus: lambda1(t) for each t in
/// cfg.t_values, with the mass captured by the best quarter-height
/// window. Verdicts: every row <= 8 pi * 1.05, ladder monotone, final
/// gap to 8 pi.
ExperimentReport run_concentration(const ExperimentConfig& cfg);

/// Degenerating torus classes b in cfg.b_values: flat lambda1 check
/// against 4 pi^2 / b^2, then a multi-start ascent estimate of nu(b).
/// Verdicts: nu decreasing in b, nu >= 8 pi * 0.95 on ascent rows,
/// nu(b_max) within [0.95, 1.25] * 8 pi.
ExperimentReport run_torus_degeneration(const ExperimentConfig& cfg);

/// Klein classes: flat lambda1 against the parity formula for each b,
/// ascent estimates. Large-b rows must stay below 12 pi * 1.05
/// (area-normalized); small-b rows approach 8 pi within 20%.
ExperimentReport run_klein_degeneration(const ExperimentConfig& cfg);

/// Random admissible traces: exact energy vs quadrature (rel err
/// <= 1e-6) and exact <= bound (violation <= 1e-12).
ExperimentReport run_cylinder_lemma(const ExperimentConfig& cfg);

/// Random measures through the renormalization solver: residual <= tol
/// within the iteration budget; the unbalanceable antipodal pair must
/// raise DegenerateMeasure.
ExperimentReport run_hersch_suite(const ExperimentConfig& cfg);

/// Dispatch on cfg.experiment.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Parse an ExperimentConfig from a JSON document (fields as in the
/// struct; missing fields keep their defaults).
ExperimentConfig config_from_json(const std::string& json_text);
std::string config_to_json(const ExperimentConfig& cfg);

}  // namespace sslab
