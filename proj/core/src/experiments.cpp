#include "sslab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "sslab/cylinder.hpp"
#include "sslab/errors.hpp"
#include "sslab/fields.hpp"
#include "sslab/spectral.hpp"
#include "sslab/spheremaps.hpp"
#include "sslab/surfaces.hpp"

namespace sslab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEightPi = 8.0 * kPi;
constexpr double kTwelvePi = 12.0 * kPi;

double uniform01(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z = z ^ (z >> 31);
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

class Stopwatch {
  public:
    double seconds() const {
        return std::chrono::duration<double>(clock::now() - start_).count();
    }

  private:
    using clock = std::chrono::steady_clock;
    clock::time_point start_ = clock::now();
};

std::string window_note(const ConformalFactor& f, int window_rows) {
    const double mass = max_window_mass(mass_profile(f), window_rows);
    return "window_mass=" + format_number(mass);
}

/// Best ascent value over a ladder of deterministic starts. The flat
/// metric is a stationary point of the cluster-averaged subgradient, so
/// a concentrated start is run alongside the uniform one and the larger
/// final value wins.
struct NuEstimate {
    double value = 0.0;
    double residual = 0.0;
    ConformalFactor factor;
};

NuEstimate estimate_nu(const DiscreteDomain& domain,
                       const std::vector<ConformalFactor>& starts, int steps,
                       double tol, std::uint64_t seed) {
    NuEstimate best;
    best.value = -1.0;
    for (const auto& start : starts) {
        AscentOptions opts;
        opts.steps = steps;
        opts.step_size = 0.5;
        opts.rho_min = 1e-6 / domain.area();
        // Line-search trials tolerate a looser residual; the winning
        // factor is re-solved at the requested tolerance below.
        opts.eigen_tol = std::max(tol, 3e-6);
        opts.seed = seed;
        AscentResult res = nu_maximize(domain, start, opts);
        if (res.trace.back() > best.value) {
            best.value = res.trace.back();
            best.factor = res.factor;
        }
    }
    SpectralProblem prob = assemble(domain, best.factor);
    SolveOptions sopts;
    sopts.tol = tol;
    EigenResult ev = eigensolve(prob, 2, sopts);
    best.residual = ev.residuals[1];
    return best;
}

}  // namespace

ExperimentReport run_concentration(const ExperimentConfig& cfg) {
    ExperimentReport report;
    report.config = cfg;
    std::vector<double>& ts = report.config.t_values;
    if (ts.empty()) ts = {2.0, 4.0, 8.0, 16.0};
    int& nx = report.config.nx;
    int& ny = report.config.ny;
    if (nx <= 0) nx = 256;
    if (ny <= 0) ny = 256;

    report.notes.push_back(
        "upper-bound verdicts apply to the concentrating ladder; homogeneous flat classes "
        "can exceed 8*pi within their own class");

    const DiscreteDomain domain = torus_domain(0.0, 1.0, nx, ny);
    std::vector<double> lambdas;
    for (double t : ts) {
        Stopwatch watch;
        ReportRow row;
        row.param_name = "t";
        row.param_value = t;
        row.nx = nx;
        row.ny = ny;
        row.reference = kEightPi;
        try {
            ConformalFactor f = bubble_factor(domain, t, 1e-3);
            SpectralProblem prob = assemble(domain, f);
            SolveOptions opts;
            opts.tol = report.config.tol;
            opts.seed = report.config.seed;
            EigenResult ev = eigensolve(prob, 4, opts);
            row.lambda1 = ev.eigenvalues[1];
            row.residual = ev.residuals[1];
            row.rel_gap = (row.lambda1 - kEightPi) / kEightPi;
            row.verdict = row.lambda1 <= kEightPi * 1.05 ? "pass" : "fail";
            row.note = window_note(f, std::max(1, ny / 4));
            lambdas.push_back(row.lambda1);
        } catch (const Error& e) {
            row.verdict = "fail";
            row.note = e.what();
        }
        row.runtime_s = watch.seconds();
        report.rows.push_back(std::move(row));
    }

    ReportRow monotone;
    monotone.param_name = "ladder_monotone";
    monotone.param_value = static_cast<double>(ts.size());
    monotone.nx = nx;
    monotone.ny = ny;
    monotone.reference = kEightPi;
    bool increasing = lambdas.size() == ts.size() && !lambdas.empty();
    for (std::size_t i = 1; i < lambdas.size(); ++i)
        increasing = increasing && lambdas[i] > lambdas[i - 1];
    monotone.lambda1 = lambdas.empty() ? 0.0 : lambdas.back();
    monotone.rel_gap =
        lambdas.empty() ? 1.0 : std::abs(lambdas.back() - kEightPi) / kEightPi;
    monotone.verdict = increasing && monotone.rel_gap <= 0.15 ? "pass" : "fail";
    report.rows.push_back(std::move(monotone));
    return report;
}

ExperimentReport run_torus_degeneration(const ExperimentConfig& cfg) {
    ExperimentReport report;
    report.config = cfg;
    std::vector<double>& bs = report.config.b_values;
    if (bs.empty()) bs = {2.0, 4.0, 8.0};
    int& nx = report.config.nx;
    int& ny = report.config.ny;
    if (nx <= 0) nx = 128;
    if (ny <= 0) ny = 512;  // rows at the largest b; smaller b keep the same hy
    const double b_max = *std::max_element(bs.begin(), bs.end());

    report.notes.push_back(
        "both 3/4-height mass windows are checked; the larger one is reported");

    std::vector<double> nus;
    for (double b : bs) {
        const int rows = std::max(32, static_cast<int>(std::lround(ny * b / b_max)));
        const DiscreteDomain domain = torus_domain(0.0, b, nx, rows);

        // Flat cross-check against the closed-form spectrum.
        {
            Stopwatch watch;
            ReportRow row;
            row.param_name = "flat_b";
            row.param_value = b;
            row.nx = nx;
            row.ny = rows;
            try {
                const FlatSpectrum spec = flat_torus_spectrum(0.0, b, 2);
                row.reference = spec.eigenvalues[1];
                SpectralProblem prob = assemble(domain, uniform_factor(domain));
                SolveOptions opts;
                opts.tol = report.config.tol;
                opts.seed = report.config.seed;
                EigenResult ev = eigensolve(prob, 4, opts);
                row.lambda1 = ev.eigenvalues[1] / spec.area;  // undo area-one scaling
                row.residual = ev.residuals[1];
                row.rel_gap = std::abs(row.lambda1 - row.reference) / row.reference;
                row.verdict = row.rel_gap <= 0.02 ? "pass" : "fail";
            } catch (const Error& e) {
                row.verdict = "fail";
                row.note = e.what();
            }
            row.runtime_s = watch.seconds();
            report.rows.push_back(std::move(row));
        }

        // Ascent estimate of nu(b).
        {
            Stopwatch watch;
            ReportRow row;
            row.param_name = "nu_b";
            row.param_value = b;
            row.nx = nx;
            row.ny = rows;
            row.reference = kEightPi;
            try {
                std::vector<ConformalFactor> starts;
                starts.push_back(uniform_factor(domain));
                starts.push_back(bubble_factor(domain, std::exp(kPi * b), 1e-3));
                NuEstimate nu = estimate_nu(domain, starts, report.config.steps,
                                            report.config.tol, report.config.seed);
                row.lambda1 = nu.value;
                row.residual = nu.residual;
                row.rel_gap = (nu.value - kEightPi) / kEightPi;
                row.verdict = nu.value >= kEightPi * 0.95 ? "pass" : "fail";
                row.note = window_note(nu.factor, std::max(1, 3 * rows / 4));
                nus.push_back(nu.value);
            } catch (const Error& e) {
                row.verdict = "fail";
                row.note = e.what();
            }
            row.runtime_s = watch.seconds();
            report.rows.push_back(std::move(row));
        }
    }

    ReportRow trend;
    trend.param_name = "nu_decreasing";
    trend.param_value = static_cast<double>(bs.size());
    trend.nx = nx;
    trend.ny = ny;
    trend.reference = kEightPi;
    bool decreasing = nus.size() == bs.size() && !nus.empty();
    for (std::size_t i = 1; i < nus.size(); ++i)
        decreasing = decreasing && nus[i] < nus[i - 1];
    trend.lambda1 = nus.empty() ? 0.0 : nus.back();
    trend.rel_gap = nus.empty() ? 1.0 : (nus.back() - kEightPi) / kEightPi;
    const bool bracket =
        !nus.empty() && nus.back() >= 0.95 * kEightPi && nus.back() <= 1.25 * kEightPi;
    trend.verdict = decreasing && bracket ? "pass" : "fail";
    report.rows.push_back(std::move(trend));
    return report;
}

ExperimentReport run_klein_degeneration(const ExperimentConfig& cfg) {
    ExperimentReport report;
    report.config = cfg;
    std::vector<double>& bs = report.config.b_values;
    if (bs.empty()) bs = {0.25, 0.5, 4.0, 8.0};
    int& nx = report.config.nx;
    int& ny = report.config.ny;
    if (nx <= 0) nx = 256;
    if (ny <= 0) ny = 256;  // rows at the largest b
    const double b_max = *std::max_element(bs.begin(), bs.end());

    report.notes.push_back(
        "nu-hat trends are reported; the small-b regime is tested as a 20% bracket around "
        "8*pi, the large-b regime against the 12*pi ceiling");

    double max_large_nu = 0.0;
    bool saw_large = false;
    for (double b : bs) {
        const bool small_regime = b < 1.0;
        // Small bottles need near-square cells fine enough to hold a
        // concentration bubble inside the height; tall bottles need the
        // row budget instead.
        int cols = nx, rows;
        if (small_regime) {
            cols = nx * 5;
            rows = std::max(24, static_cast<int>(std::lround(b * cols / kPi)));
        } else {
            rows = std::max(24, static_cast<int>(std::lround(ny * b / b_max)));
        }
        const DiscreteDomain domain = klein_domain(b, cols, rows);

        {
            Stopwatch watch;
            ReportRow row;
            row.param_name = "flat_b";
            row.param_value = b;
            row.nx = cols;
            row.ny = rows;
            try {
                const FlatSpectrum spec = flat_klein_spectrum(b, 2);
                row.reference = spec.eigenvalues[1];
                SpectralProblem prob = assemble(domain, uniform_factor(domain));
                SolveOptions opts;
                opts.tol = report.config.tol;
                opts.seed = report.config.seed;
                EigenResult ev = eigensolve(prob, 4, opts);
                row.lambda1 = ev.eigenvalues[1] / spec.area;
                row.residual = ev.residuals[1];
                row.rel_gap = std::abs(row.lambda1 - row.reference) / row.reference;
                row.verdict = row.rel_gap <= 0.02 ? "pass" : "fail";
            } catch (const Error& e) {
                row.verdict = "fail";
                row.note = e.what();
            }
            row.runtime_s = watch.seconds();
            report.rows.push_back(std::move(row));
        }

        {
            Stopwatch watch;
            ReportRow row;
            row.param_name = small_regime ? "nu_small_b" : "nu_large_b";
            row.param_value = b;
            row.nx = cols;
            row.ny = rows;
            row.reference = small_regime ? kEightPi : kTwelvePi;
            try {
                std::vector<ConformalFactor> starts;
                starts.push_back(uniform_factor(domain));
                const double sigma =
                    std::max(2.5 * std::max(domain.hx(), domain.hy()),
                             0.08 * std::min(domain.width, domain.height));
                starts.push_back(
                    blob_factor(domain, domain.width / 2.0, domain.height / 2.0, sigma, 1e-3));
                if (small_regime)
                    starts.push_back(blob_factor(domain, domain.width / 2.0,
                                                 domain.height / 2.0, 2.5 * sigma, 1e-3));
                const int steps = small_regime ? 2 * report.config.steps
                                               : std::min(report.config.steps, 40);
                NuEstimate nu = estimate_nu(domain, starts, steps, report.config.tol,
                                            report.config.seed);
                row.lambda1 = nu.value;
                row.residual = nu.residual;
                row.rel_gap = (nu.value - row.reference) / row.reference;
                if (small_regime) {
                    row.verdict =
                        std::abs(nu.value - kEightPi) <= 0.20 * kEightPi ? "pass" : "fail";
                } else {
                    row.verdict = nu.value <= kTwelvePi * 1.05 ? "pass" : "fail";
                    max_large_nu = std::max(max_large_nu, nu.value);
                    saw_large = true;
                }
                row.note = window_note(nu.factor, std::max(1, 3 * rows / 4));
            } catch (const Error& e) {
                row.verdict = "fail";
                row.note = e.what();
            }
            row.runtime_s = watch.seconds();
            report.rows.push_back(std::move(row));
        }
    }

    if (saw_large) {
        ReportRow ceiling;
        ceiling.param_name = "large_b_max";
        ceiling.param_value = b_max;
        ceiling.nx = nx;
        ceiling.ny = ny;
        ceiling.lambda1 = max_large_nu;
        ceiling.reference = kTwelvePi;
        ceiling.rel_gap = (max_large_nu - kTwelvePi) / kTwelvePi;
        ceiling.verdict = max_large_nu <= kTwelvePi * 1.05 ? "pass" : "fail";
        report.rows.push_back(std::move(ceiling));
    }
    return report;
}

namespace {

/// Dirichlet energy of the evaluated harmonic extension by composite
/// Gauss-Legendre in x; the circle integral of a trigonometric
/// polynomial is carried out exactly. Oracle for the closed form.
double extension_energy_quadrature(const FourierTrace& t, double L, int panels = 256) {
    static const double nodes[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                    0.5384693101056831, 0.9061798459386640};
    static const double weights[5] = {0.2369268850561891, 0.4786286704993665,
                                      0.5688888888888889, 0.4786286704993665,
                                      0.2369268850561891};
    const double h = L / panels;
    double energy = 2.0 * kPi * t.mean * t.mean / L;  // exact for the linear part
    for (int k = 1; k <= t.kmax(); ++k) {
        const double ak = t.cos_coeffs[k - 1];
        const double bk = t.sin_coeffs[k - 1];
        const double amp = ak * ak + bk * bk;
        if (amp == 0.0) continue;
        // integrand k^2 cosh(2kx) / sinh^2(kL), written overflow-free
        const double denom = 1.0 - std::exp(-2.0 * k * L);
        double integral = 0.0;
        for (int p = 0; p < panels; ++p) {
            const double x0 = p * h;
            for (int q = 0; q < 5; ++q) {
                const double x = x0 + 0.5 * h * (1.0 + nodes[q]);
                const double core = 2.0 * (std::exp(2.0 * k * (x - L)) +
                                           std::exp(-2.0 * k * (x + L)));
                integral += 0.5 * h * weights[q] * k * k * core / (denom * denom);
            }
        }
        energy += kPi * amp * integral;
    }
    return energy;
}

FourierTrace random_trace(std::uint64_t& state, int kmax, double circumference,
                          bool admissible) {
    std::vector<double> a(kmax), b(kmax);
    for (int k = 0; k < kmax; ++k) {
        const double decay = 1.0 / (1.0 + k * k);
        a[k] = (2.0 * uniform01(state) - 1.0) * decay;
        b[k] = (2.0 * uniform01(state) - 1.0) * decay;
    }
    double mean = 2.0 * uniform01(state) - 1.0;
    FourierTrace t;
    t.mean = mean;
    t.cos_coeffs = std::move(a);
    t.sin_coeffs = std::move(b);
    t.circumference = circumference;
    if (admissible) {
        // Rescale so sup|u| lands strictly inside [0, 1].
        double sup = 0.0;
        const int n = 32 * std::max(kmax, 1);
        for (int i = 0; i < n; ++i) {
            const double s = circumference * i / n;
            double u = t.mean;
            for (int k = 1; k <= kmax; ++k) {
                u += t.cos_coeffs[k - 1] * std::cos(2.0 * kPi * k * s / circumference) +
                     t.sin_coeffs[k - 1] * std::sin(2.0 * kPi * k * s / circumference);
            }
            sup = std::max(sup, std::abs(u));
        }
        const double target = 0.05 + 0.9 * uniform01(state);
        const double scale = sup > 0.0 ? target / sup : 1.0;
        t.mean *= scale;
        for (double& v : t.cos_coeffs) v *= scale;
        for (double& v : t.sin_coeffs) v *= scale;
    }
    return t;
}

}  // namespace

ExperimentReport run_cylinder_lemma(const ExperimentConfig& cfg) {
    ExperimentReport report;
    report.config = cfg;
    if (report.config.trace_count <= 0) report.config.trace_count = 100;
    const int count = report.config.trace_count;
    std::uint64_t state = report.config.seed * 0x9e3779b97f4a7c15ULL + 1;

    // Exactness sweep: closed form vs quadrature.
    {
        Stopwatch watch;
        ReportRow row;
        row.param_name = "exact_vs_quadrature_max_relerr";
        row.param_value = count;
        double worst = 0.0;
        for (int i = 0; i < count; ++i) {
            const int kmax = 1 + static_cast<int>(uniform01(state) * 16) % 16;
            const double L = 0.5 + 7.5 * uniform01(state);
            FourierTrace t = random_trace(state, kmax, 2.0 * kPi, false);
            const double exact = extension_energy_exact(t, L);
            const double quad = extension_energy_quadrature(t, L);
            worst = std::max(worst, std::abs(exact - quad) / std::max(quad, 1e-300));
        }
        row.lambda1 = worst;
        row.reference = 1e-6;
        row.rel_gap = worst / 1e-6;
        row.verdict = worst <= 1e-6 ? "pass" : "fail";
        row.runtime_s = watch.seconds();
        report.rows.push_back(std::move(row));
    }

    // Ordering sweep: exact <= bound for admissible traces.
    {
        Stopwatch watch;
        ReportRow row;
        row.param_name = "bound_max_violation";
        row.param_value = 10 * count;
        double worst = 0.0;
        for (int i = 0; i < 10 * count; ++i) {
            const int kmax = 1 + static_cast<int>(uniform01(state) * 16) % 16;
            const double L = 0.5 + 7.5 * uniform01(state);
            FourierTrace t = random_trace(state, kmax, 2.0 * kPi, true);
            const double exact = extension_energy_exact(t, L);
            const double bound = extension_energy_bound(t, L);
            worst = std::max(worst, exact - bound);
        }
        row.lambda1 = worst;
        row.reference = 1e-12;
        row.verdict = worst <= 1e-12 ? "pass" : "fail";
        row.runtime_s = watch.seconds();
        report.rows.push_back(std::move(row));
    }

    // Constant traces give equality in the bound.
    {
        Stopwatch watch;
        ReportRow row;
        row.param_name = "constant_trace_equality";
        row.param_value = 1.0;
        FourierTrace t;
        t.mean = 1.0;
        t.cos_coeffs = {0.0};
        t.sin_coeffs = {0.0};
        const double L = 2.0;
        const double exact = extension_energy_exact(t, L);
        const double bound = extension_energy_bound(t, L);
        row.lambda1 = exact;
        row.reference = bound;
        row.rel_gap = std::abs(exact - bound) / bound;
        row.verdict = row.rel_gap <= 1e-12 ? "pass" : "fail";
        row.runtime_s = watch.seconds();
        report.rows.push_back(std::move(row));
    }

    // Mean-free energies decrease in L.
    {
        Stopwatch watch;
        ReportRow row;
        row.param_name = "monotone_in_L";
        const std::vector<double> ls = {0.5, 1.0, 2.0, 4.0, 8.0};
        row.param_value = static_cast<double>(ls.size());
        FourierTrace t = random_trace(state, 8, 2.0 * kPi, false);
        t.mean = 0.0;
        bool monotone = true;
        double prev = std::numeric_limits<double>::max();
        for (double L : ls) {
            const double e = extension_energy_exact(t, L);
            monotone = monotone && e <= prev + 1e-12;
            prev = e;
        }
        row.lambda1 = prev;
        row.verdict = monotone ? "pass" : "fail";
        row.runtime_s = watch.seconds();
        report.rows.push_back(std::move(row));
    }
    return report;
}

namespace {

Eigen::VectorXd random_sphere_point(std::uint64_t& state, int dim) {
    // Rejection-free: normalized vector of Box-Muller-free symmetric
    // uniforms is biased, so use Marsaglia-style rejection on the cube.
    for (;;) {
        Eigen::VectorXd v(dim);
        for (int i = 0; i < dim; ++i) v[i] = 2.0 * uniform01(state) - 1.0;
        const double n = v.norm();
        if (n > 1e-3 && n <= 1.0) return v / n;
    }
}

}  // namespace

ExperimentReport run_hersch_suite(const ExperimentConfig& cfg) {
    ExperimentReport report;
    report.config = cfg;
    if (report.config.trace_count <= 0) report.config.trace_count = 100;
    const int count = report.config.trace_count;
    const double tol = 1e-10;
    const int max_iters = 200;
    std::uint64_t state = report.config.seed * 0x9e3779b97f4a7c15ULL + 2;

    for (int dim : {3, 5}) {
        Stopwatch watch;
        ReportRow row;
        row.param_name = dim == 3 ? "s2_max_residual" : "s4_max_residual";
        const int cases = dim == 3 ? count : std::max(count / 5, 1);
        row.param_value = cases;
        row.reference = tol;
        double worst_res = 0.0;
        try {
            for (int i = 0; i < cases; ++i) {
                const int atoms = 8 + static_cast<int>(uniform01(state) * 17);
                DiscreteMeasure mu;
                for (int a = 0; a < atoms; ++a) {
                    mu.atoms.push_back(random_sphere_point(state, dim));
                    mu.weights.push_back(0.5 + uniform01(state));
                }
                MoebiusParam c = hersch_renormalize(mu, tol, max_iters);
                worst_res = std::max(worst_res, center_of_mass(mu, c).norm());
            }
            row.lambda1 = worst_res;
            row.residual = worst_res;
            row.rel_gap = worst_res / tol;
            row.verdict = worst_res <= tol ? "pass" : "fail";
            row.note = "max_iters_allowed=" + std::to_string(max_iters);
        } catch (const Error& e) {
            row.verdict = "fail";
            row.note = e.what();
        }
        row.runtime_s = watch.seconds();
        report.rows.push_back(std::move(row));
    }

    {
        Stopwatch watch;
        ReportRow row;
        row.param_name = "degenerate_pair_raises";
        row.param_value = 0.75;
        DiscreteMeasure mu;
        mu.atoms = {Eigen::Vector3d(0, 0, 1), Eigen::Vector3d(0, 0, -1)};
        mu.weights = {0.75, 0.25};
        bool raised = false;
        try {
            hersch_renormalize(mu, tol, max_iters);
        } catch (const DegenerateMeasure&) {
            raised = true;
        } catch (const Error& e) {
            row.note = e.what();
        }
        row.lambda1 = raised ? 1.0 : 0.0;
        row.reference = 1.0;
        row.verdict = raised ? "pass" : "fail";
        row.runtime_s = watch.seconds();
        report.rows.push_back(std::move(row));
    }
    return report;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    switch (cfg.experiment) {
        case Experiment::Concentration: return run_concentration(cfg);
        case Experiment::TorusDegeneration: return run_torus_degeneration(cfg);
        case Experiment::KleinDegeneration: return run_klein_degeneration(cfg);
        case Experiment::CylinderLemma: return run_cylinder_lemma(cfg);
        case Experiment::HerschSuite: return run_hersch_suite(cfg);
    }
    throw Error("run_experiment: unknown experiment");
}

ExperimentConfig config_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(std::string("config parse error: ") + e.what());
    }
    ExperimentConfig cfg;
    if (j.contains("experiment")) cfg.experiment = experiment_from_name(j["experiment"]);
    cfg.nx = j.value("nx", 0);
    cfg.ny = j.value("ny", 0);
    if (j.contains("t_values")) cfg.t_values = j["t_values"].get<std::vector<double>>();
    if (j.contains("b_values")) cfg.b_values = j["b_values"].get<std::vector<double>>();
    cfg.steps = j.value("steps", 60);
    cfg.trace_count = j.value("trace_count", 100);
    cfg.tol = j.value("tol", 1e-7);
    cfg.seed = j.value("seed", std::uint64_t{1});
    cfg.out_path = j.value("out", std::string{});
    const std::string fmt = j.value("format", std::string{"csv"});
    if (fmt == "csv") {
        cfg.format = ReportFormat::Csv;
    } else if (fmt == "json") {
        cfg.format = ReportFormat::Json;
    } else {
        throw Error("config: format must be csv or json");
    }
    cfg.timing = j.value("timing", false);
    return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
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
    return j.dump(2);
}

}  // namespace sslab
