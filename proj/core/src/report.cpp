#include "sslab/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sslab/errors.hpp"

namespace sslab {

using nlohmann::json;

std::string experiment_name(Experiment e) {
    switch (e) {
        case Experiment::Concentration: return "concentration";
        case Experiment::TorusDegeneration: return "torus-degeneration";
        case Experiment::KleinDegeneration: return "klein-degeneration";
        case Experiment::CylinderLemma: return "cylinder-lemma";
        case Experiment::HerschSuite: return "hersch-suite";
    }
    return "unknown";
}

Experiment experiment_from_name(const std::string& name) {
    if (name == "concentration") return Experiment::Concentration;
    if (name == "torus-degeneration") return Experiment::TorusDegeneration;
    if (name == "klein-degeneration") return Experiment::KleinDegeneration;
    if (name == "cylinder-lemma") return Experiment::CylinderLemma;
    if (name == "hersch-suite") return Experiment::HerschSuite;
    throw Error("unknown experiment name: " + name);
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::uint64_t ExperimentConfig::hash() const {
    // FNV-1a over a canonical text rendering of the scientific fields.
    std::ostringstream os;
    os << experiment_name(experiment) << '|' << nx << '|' << ny << '|';
    for (double t : t_values) os << format_number(t) << ',';
    os << '|';
    for (double b : b_values) os << format_number(b) << ',';
    os << '|' << steps << '|' << trace_count << '|' << format_number(tol) << '|' << seed;
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : os.str()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

bool ExperimentReport::all_passed() const {
    for (const auto& row : rows)
        if (row.verdict == "fail") return false;
    return true;
}

std::string to_csv(const ExperimentReport& report) {
    std::ostringstream os;
    os << "experiment,param_name,param_value,nx,ny,lambda1,reference,rel_gap,residual,"
          "runtime_s,verdict\n";
    const std::string name = experiment_name(report.config.experiment);
    for (const auto& row : report.rows) {
        const double runtime = report.config.timing ? row.runtime_s : 0.0;
        os << name << ',' << row.param_name << ',' << format_number(row.param_value) << ','
           << row.nx << ',' << row.ny << ',' << format_number(row.lambda1) << ','
           << format_number(row.reference) << ',' << format_number(row.rel_gap) << ','
           << format_number(row.residual) << ',' << format_number(runtime) << ','
           << row.verdict << '\n';
    }
    return os.str();
}

namespace {

json config_json(const ExperimentConfig& cfg) {
    json j;
    j["experiment"] = experiment_name(cfg.experiment);
    j["nx"] = cfg.nx;
    j["ny"] = cfg.ny;
    j["t_values"] = cfg.t_values;
    j["b_values"] = cfg.b_values;
    j["steps"] = cfg.steps;
    j["trace_count"] = cfg.trace_count;
    j["tol"] = cfg.tol;
    j["seed"] = cfg.seed;
    j["out"] = cfg.out_path;
    j["format"] = cfg.format == ReportFormat::Csv ? "csv" : "json";
    j["timing"] = cfg.timing;
    return j;
}

}  // namespace

std::string to_json(const ExperimentReport& report) {
    json j;
    j["config"] = config_json(report.config);
    j["config_hash"] = report.config.hash();
    j["notes"] = report.notes;
    json rows = json::array();
    for (const auto& row : report.rows) {
        json r;
        r["experiment"] = experiment_name(report.config.experiment);
        r["param_name"] = row.param_name;
        r["param_value"] = row.param_value;
        r["nx"] = row.nx;
        r["ny"] = row.ny;
        r["lambda1"] = row.lambda1;
        r["reference"] = row.reference;
        r["rel_gap"] = row.rel_gap;
        r["residual"] = row.residual;
        r["runtime_s"] = row.runtime_s;
        r["verdict"] = row.verdict;
        r["note"] = row.note;
        r["config_hash"] = report.config.hash();
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j.dump(2);
}

void emit(const ExperimentReport& report, ReportFormat format, const std::string& path) {
    const std::string text = format == ReportFormat::Csv ? to_csv(report) : to_json(report);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("emit: cannot open " + path + " for writing");
    out << text;
    if (format == ReportFormat::Json) out << '\n';
    if (!out) throw IoError("emit: short write to " + path);
}

}  // namespace sslab
