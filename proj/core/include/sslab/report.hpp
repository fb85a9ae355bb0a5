#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sslab {

enum class Experiment {
    Concentration,
    TorusDegeneration,
    KleinDegeneration,
    CylinderLemma,
    HerschSuite,
};

enum class ReportFormat { Csv, Json };

std::string experiment_name(Experiment e);
Experiment experiment_from_name(const std::string& name);

struct ExperimentConfig {
    Experiment experiment = Experiment::Concentration;
    int nx = 0;  // 0 = per-experiment default
    int ny = 0;
    std::vector<double> t_values;
    std::vector<double> b_values;
    int steps = 60;                 // ascent budget
    int trace_count = 100;          // random sweep sizes
    double tol = 1e-7;              // solver tolerance
    std::uint64_t seed = 1;
    std::string out_path;
    ReportFormat format = ReportFormat::Csv;
    bool timing = false;            // wall-clock runtimes in the CSV (JSON always has them)

    /// FNV-1a hash of the scientific fields; carried by every row.
    std::uint64_t hash() const;
};

/// One sweep row. `lambda1` holds the measured quantity, `reference`
/// the value it is compared against, `rel_gap` their relative gap.
struct ReportRow {
    std::string param_name;
    double param_value = 0.0;
    int nx = 0;
    int ny = 0;
    double lambda1 = 0.0;
    double reference = 0.0;
    double rel_gap = 0.0;
    double residual = 0.0;
    double runtime_s = 0.0;
    std::string verdict = "skip";   // pass | fail | skip
    std::string note;               // error string or mass-profile summary
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<ReportRow> rows;
    std::vector<std::string> notes;

    bool all_passed() const;        // every verdict pass or skip
};

/// Serialize with 12 significant digits. CSV columns:
/// experiment,param_name,param_value,nx,ny,lambda1,reference,rel_gap,
/// residual,runtime_s,verdict.
std::string to_csv(const ExperimentReport& report);
std::string to_json(const ExperimentReport& report);

/// Write the report to config.out_path (or `path` when nonempty) in the
/// requested format. Throws IoError on failure.
void emit(const ExperimentReport& report, ReportFormat format, const std::string& path);

std::string format_number(double x);   // 12 significant digits, C locale

}  // namespace sslab
