#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sslab/errors.hpp"
#include "sslab/experiments.hpp"
#include "sslab/report.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw sslab::Error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Overrides {
    std::string config_path;
    int nx = -1;
    int ny = -1;
    std::vector<double> b_values;
    std::vector<double> t_values;
    int steps = -1;
    double tol = -1.0;
    long long seed = -1;
    std::string out;
    std::string format;
    bool timing = false;
};

void apply(const Overrides& o, sslab::ExperimentConfig& cfg) {
    if (o.nx >= 0) cfg.nx = o.nx;
    if (o.ny >= 0) cfg.ny = o.ny;
    if (!o.b_values.empty()) cfg.b_values = o.b_values;
    if (!o.t_values.empty()) cfg.t_values = o.t_values;
    if (o.steps >= 0) cfg.steps = o.steps;
    if (o.tol > 0.0) cfg.tol = o.tol;
    if (o.seed >= 0) cfg.seed = static_cast<std::uint64_t>(o.seed);
    if (!o.out.empty()) cfg.out_path = o.out;
    if (o.format == "csv") cfg.format = sslab::ReportFormat::Csv;
    if (o.format == "json") cfg.format = sslab::ReportFormat::Json;
    if (o.timing) cfg.timing = true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sslab - fundamental-tone experiments on tori, Klein bottles and spheres"};
    app.require_subcommand(1);

    const std::vector<std::string> names = {"concentration", "torus-degeneration",
                                            "klein-degeneration", "cylinder-lemma",
                                            "hersch-suite"};
    Overrides o;
    for (const auto& name : names) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
        sub->add_option("--config", o.config_path, "JSON config file");
        sub->add_option("--nx", o.nx, "grid columns");
        sub->add_option("--ny", o.ny, "grid rows (at the largest b for sweeps)");
        sub->add_option("--b", o.b_values, "moduli heights to sweep");
        sub->add_option("--t", o.t_values, "bubble dilations to sweep");
        sub->add_option("--steps", o.steps, "ascent step budget");
        sub->add_option("--tol", o.tol, "eigensolver residual tolerance");
        sub->add_option("--seed", o.seed, "random seed");
        sub->add_option("--out", o.out, "output file path");
        sub->add_option("--format", o.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_flag("--timing", o.timing, "record wall-clock runtimes in the CSV");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        sslab::ExperimentConfig cfg;
        if (!o.config_path.empty()) cfg = sslab::config_from_json(read_file(o.config_path));
        cfg.experiment = sslab::experiment_from_name(app.get_subcommands().front()->get_name());
        apply(o, cfg);

        sslab::ExperimentReport report = sslab::run_experiment(cfg);
        const std::string text = report.config.format == sslab::ReportFormat::Csv
                                     ? sslab::to_csv(report)
                                     : sslab::to_json(report);
        if (report.config.out_path.empty()) {
            std::cout << text;
            if (report.config.format == sslab::ReportFormat::Json) std::cout << '\n';
        } else {
            sslab::emit(report, report.config.format, report.config.out_path);
        }

        int passed = 0, failed = 0;
        for (const auto& row : report.rows) {
            if (row.verdict == "pass") ++passed;
            if (row.verdict == "fail") ++failed;
        }
        std::cerr << sslab::experiment_name(report.config.experiment) << ": " << passed
                  << " pass, " << failed << " fail, "
                  << report.rows.size() - passed - failed << " skip\n";
        return report.all_passed() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
