#include "sslab/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <vector>

#include "sslab/errors.hpp"

namespace sslab {

namespace {

constexpr double kPi = 3.14159265358979323846;

double uniform01(std::uint64_t& state) {
    // splitmix64; bit-stable across platforms.
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z = z ^ (z >> 31);
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

}  // namespace

SpectralProblem assemble(const DiscreteDomain& domain, const ConformalFactor& factor) {
    if (!factor.domain.same_grid(domain))
        throw DomainMismatch("assemble: factor was built on a different grid");
    const int n = domain.num_nodes();
    const double wx = domain.hy() / domain.hx();
    const double wy = domain.hx() / domain.hy();

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(n) * 5);
    for (int j = 0; j < domain.ny; ++j) {
        for (int i = 0; i < domain.nx; ++i) {
            const int p = domain.index(i, j);
            const auto nb = domain.neighbors(i, j);
            const double w[4] = {wx, wx, wy, wy};
            double diag = 0.0;
            for (int d = 0; d < 4; ++d) {
                diag += w[d];
                trips.emplace_back(p, nb[d], -w[d]);
            }
            trips.emplace_back(p, p, diag);
        }
    }
    SpectralProblem prob;
    prob.stiffness.resize(n, n);
    prob.stiffness.setFromTriplets(trips.begin(), trips.end());
    prob.stiffness.makeCompressed();
    prob.mass = Eigen::Map<const Eigen::VectorXd>(factor.rho.values.data(), n) *
                domain.cell_area();
    prob.domain = domain;
    return prob;
}

namespace {

/// Block preconditioned Rayleigh-Ritz iteration for the smallest
/// eigenpairs of K u = lambda M u, M diagonal, with the constant mode
/// deflated exactly. The preconditioner is an LDLT factor of
/// K + tau * M, reused across mass updates until it goes stale.
class BlockSolver {
  public:
    BlockSolver(const SpectralProblem& p, SolveOptions opts)
        : stiffness_(p.stiffness), mass_(p.mass), domain_(p.domain), opts_(opts) {
        const int n = static_cast<int>(mass_.size());
        constant_ = Eigen::VectorXd::Ones(n);
        constant_ /= std::sqrt(mass_.sum());
        factorize(probe_tau());
    }

    void set_mass(const Eigen::VectorXd& mass) {
        mass_ = mass;
        constant_ = Eigen::VectorXd::Ones(mass_.size());
        constant_ /= std::sqrt(mass_.sum());
        // Refresh the preconditioner when the last solve dragged or the
        // shift drifted far from the current eigenvalue scale.
        if (last_theta_ > 0.0) {
            const double target = 0.5 * last_theta_;
            if (last_iters_ > 12 || tau_ > 4.0 * target || 4.0 * tau_ < target)
                factorize(target);
        }
    }

    /// k pairs including the exact constant pair at index 0.
    EigenResult solve(int k, double tol) {
        const int n = static_cast<int>(mass_.size());
        if (k < 1) throw Error("eigensolve: k must be >= 1");
        const int kk = k - 1;
        if (kk > n - 1) throw Error("eigensolve: k exceeds problem size");
        Eigen::MatrixXd x = iterate(kk, tol);
        return package(kk, x);
    }

    int last_iterations() const { return last_iters_; }

  private:
    void factorize(double tau) {
        tau_ = std::clamp(tau, 1e-10, 1e8);
        Eigen::SparseMatrix<double> shifted = stiffness_;
        for (int i = 0; i < shifted.rows(); ++i)
            shifted.coeffRef(i, i) += tau_ * mass_[i];
        ldlt_.compute(shifted);
        if (ldlt_.info() != Eigen::Success)
            throw NoConvergence("eigensolve: preconditioner factorization failed", 0.0, 0);
    }

    double probe_tau() const {
        const int nx = domain_.nx, ny = domain_.ny;
        Eigen::VectorXd py(nx * ny), px(nx * ny);
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                py[domain_.index(i, j)] = std::cos(2.0 * kPi * j / ny);
                px[domain_.index(i, j)] = std::cos(2.0 * kPi * i / nx);
            }
        const double ry = quotient(py);
        const double rx = quotient(px);
        double tau = 0.5 * std::min(rx, ry);
        if (!(tau > 0.0) || !std::isfinite(tau)) tau = 1.0;
        return tau;
    }

    double quotient(Eigen::VectorXd u) const {
        const double mean = mass_.dot(u) / mass_.sum();
        u.array() -= mean;
        const double denom = u.dot(mass_.cwiseProduct(u));
        if (denom <= 0.0) return std::numeric_limits<double>::infinity();
        return u.dot(stiffness_ * u) / denom;
    }

    void deflate(Eigen::MatrixXd& block) const {
        const Eigen::VectorXd mc = mass_.cwiseProduct(constant_);
        block.noalias() -= constant_ * (mc.transpose() * block);
    }

    /// M-orthonormalize the columns of s, dropping near-dependent ones.
    Eigen::MatrixXd ortho(const Eigen::MatrixXd& s) const {
        Eigen::MatrixXd gram = s.transpose() * mass_.asDiagonal() * s;
        gram = 0.5 * (gram + gram.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
        const double cutoff = es.eigenvalues().maxCoeff() * 1e-12;
        int keep = 0;
        for (int i = 0; i < es.eigenvalues().size(); ++i)
            if (es.eigenvalues()[i] > cutoff) ++keep;
        if (keep == 0)
            throw NoConvergence("eigensolve: trial space collapsed", 0.0, 0);
        Eigen::MatrixXd basis =
            es.eigenvectors().rightCols(keep) *
            es.eigenvalues().tail(keep).cwiseSqrt().cwiseInverse().asDiagonal();
        return s * basis;
    }

    Eigen::MatrixXd random_block(int n, int cols, std::uint64_t salt = 0) const {
        std::uint64_t state = opts_.seed + salt * 0x9e3779b97f4a7c15ULL;
        Eigen::MatrixXd r(n, cols);
        for (int c = 0; c < cols; ++c)
            for (int i = 0; i < n; ++i) r(i, c) = uniform01(state) - 0.5;
        return r;
    }

    Eigen::MatrixXd iterate(int kk, double tol) {
        const int n = static_cast<int>(mass_.size());
        if (kk == 0) {
            last_iters_ = 0;
            return Eigen::MatrixXd(n, 0);
        }
        const int nb = std::min(std::max(kk + 4, 6), n - 1);

        Eigen::MatrixXd x;
        if (warm_.cols() > 0) {
            x = warm_;
            if (x.cols() < nb) {
                Eigen::MatrixXd extra = random_block(n, nb - static_cast<int>(x.cols()), 1);
                x.conservativeResize(Eigen::NoChange, nb);
                x.rightCols(extra.cols()) = extra;
            } else if (x.cols() > nb) {
                x = x.leftCols(nb).eval();
            }
        } else {
            x = random_block(n, nb);
        }
        deflate(x);
        x = ortho(x);
        for (std::uint64_t attempt = 2; x.cols() < kk; ++attempt) {
            Eigen::MatrixXd padded(n, nb);
            padded.leftCols(x.cols()) = x;
            padded.rightCols(nb - x.cols()) =
                random_block(n, nb - static_cast<int>(x.cols()), attempt);
            deflate(padded);
            x = ortho(padded);
        }

        Eigen::MatrixXd prev;  // previous iterate, third block of the trial space
        Eigen::VectorXd theta;
        double best_res = std::numeric_limits<double>::max();
        for (int iter = 0; iter < opts_.max_iters; ++iter) {
            // Rayleigh-Ritz inside span(x).
            Eigen::MatrixXd kx = stiffness_ * x;
            Eigen::MatrixXd h = x.transpose() * kx;
            h = 0.5 * (h + h.transpose()).eval();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
            x = (x * es.eigenvectors()).eval();
            kx = (kx * es.eigenvectors()).eval();
            theta = es.eigenvalues();

            Eigen::MatrixXd mx = mass_.asDiagonal() * x;
            Eigen::MatrixXd resid = kx - mx * theta.asDiagonal();
            double worst = 0.0;
            for (int c = 0; c < std::min(kk, static_cast<int>(x.cols())); ++c) {
                const double denom = mx.col(c).norm();
                worst = std::max(worst, resid.col(c).norm() / std::max(denom, 1e-300));
            }
            best_res = std::min(best_res, worst);
            if (worst <= tol) {
                last_iters_ = iter;
                last_theta_ = theta[0];
                warm_ = x;
                if (std::getenv("SSLAB_SOLVER_STATS"))
                    std::fprintf(stderr, "[solver] n=%d iters=%d theta1=%.6g\n",
                                 static_cast<int>(mass_.size()), iter, theta[0]);
                return x.leftCols(kk);
            }

            Eigen::MatrixXd w = ldlt_.solve(resid);
            deflate(w);
            // Normalize correction columns so the Gram cutoff never
            // drops them as the residuals shrink.
            for (int c = 0; c < w.cols(); ++c) {
                const double nrm = std::sqrt(w.col(c).dot(mass_.cwiseProduct(w.col(c))));
                if (nrm > 0.0) w.col(c) /= nrm;
            }
            Eigen::MatrixXd trial(n, x.cols() + w.cols() + prev.cols());
            trial.leftCols(x.cols()) = x;
            trial.middleCols(x.cols(), w.cols()) = w;
            if (prev.cols() > 0) trial.rightCols(prev.cols()) = prev;

            Eigen::MatrixXd s = ortho(trial);
            Eigen::MatrixXd a = s.transpose() * (stiffness_ * s);
            a = 0.5 * (a + a.transpose()).eval();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> rr(a);
            const int take = std::min<int>(nb, static_cast<int>(s.cols()));
            prev = x;
            x = s * rr.eigenvectors().leftCols(take);
            deflate(x);
        }
        throw NoConvergence("eigensolve: residual tolerance not reached", best_res,
                            opts_.max_iters);
    }

    EigenResult package(int kk, const Eigen::MatrixXd& x) {
        const int n = static_cast<int>(mass_.size());
        EigenResult result;
        result.eigenvalues.resize(kk + 1);
        result.residuals.resize(kk + 1);
        result.eigenvectors.resize(kk + 1);

        auto to_field = [&](const Eigen::VectorXd& v) {
            GridField f(domain_.nx, domain_.ny);
            Eigen::Map<Eigen::VectorXd>(f.values.data(), n) = v;
            return f;
        };

        result.eigenvalues[0] = 0.0;
        result.eigenvectors[0] = to_field(constant_);
        result.residuals[0] =
            (stiffness_ * constant_).norm() / (mass_.cwiseProduct(constant_)).norm();
        for (int c = 0; c < kk; ++c) {
            const Eigen::VectorXd u = x.col(c);
            const double lambda = u.dot(stiffness_ * u);  // u is M-normalized
            result.eigenvalues[c + 1] = lambda;
            result.eigenvectors[c + 1] = to_field(u);
            result.residuals[c + 1] = (stiffness_ * u - lambda * mass_.cwiseProduct(u)).norm() /
                                      (mass_.cwiseProduct(u)).norm();
        }
        return result;
    }

    Eigen::SparseMatrix<double> stiffness_;
    Eigen::VectorXd mass_;
    DiscreteDomain domain_;
    SolveOptions opts_;
    Eigen::VectorXd constant_;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
    Eigen::MatrixXd warm_;
    double tau_ = 1.0;
    double last_theta_ = 0.0;
    int last_iters_ = 0;
};

}  // namespace

EigenResult eigensolve(const SpectralProblem& p, int k, double tol) {
    SolveOptions opts;
    opts.tol = tol;
    return eigensolve(p, k, opts);
}

EigenResult eigensolve(const SpectralProblem& p, int k, const SolveOptions& opts) {
    BlockSolver solver(p, opts);
    return solver.solve(k, opts.tol);
}

double rayleigh(const SpectralProblem& p, const GridField& u) {
    if (u.nx != p.domain.nx || u.ny != p.domain.ny)
        throw DomainMismatch("rayleigh: field does not match problem grid");
    const int n = p.domain.num_nodes();
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(u.values.data(), n);
    const double mean = p.mass.dot(v) / p.mass.sum();
    v.array() -= mean;
    const double denom = v.dot(p.mass.cwiseProduct(v));
    const double scale = v.cwiseAbs().maxCoeff();
    if (denom <= 1e-28 * std::max(1.0, scale * scale))
        throw ZeroField("rayleigh: field vanishes after mean projection");
    return v.dot(p.stiffness * v) / denom;
}

DensityGradient lambda1_density_gradient(const SpectralProblem& p, const EigenResult& e,
                                         double gap_tol_rel) {
    if (e.eigenvalues.size() < 2)
        throw Error("lambda1_density_gradient: result does not contain lambda1");
    const double lambda1 = e.eigenvalues[1];
    const double gap_tol = gap_tol_rel * std::max(lambda1, 1e-300);
    int cluster = 1;
    while (1 + cluster < static_cast<int>(e.eigenvalues.size()) &&
           e.eigenvalues[1 + cluster] - lambda1 < gap_tol)
        ++cluster;

    DensityGradient g;
    g.degenerate = cluster > 1;
    g.cluster_size = cluster;
    g.field = GridField(p.domain.nx, p.domain.ny);
    for (int c = 1; c <= cluster; ++c) {
        const GridField& u = e.eigenvectors[c];
        // Normalize so int u^2 rho dA = 1 regardless of caller scaling.
        double norm = 0.0;
        for (int idx = 0; idx < u.size(); ++idx)
            norm += u.values[idx] * u.values[idx] * p.mass[idx];
        for (int idx = 0; idx < u.size(); ++idx)
            g.field.values[idx] += -lambda1 * u.values[idx] * u.values[idx] / norm;
    }
    for (double& v : g.field.values) v /= cluster;
    return g;
}

AscentResult nu_maximize(const DiscreteDomain& domain, const ConformalFactor& init,
                         int steps, double step_size, double rho_min) {
    AscentOptions opts;
    opts.steps = steps;
    opts.step_size = step_size;
    opts.rho_min = rho_min;
    return nu_maximize(domain, init, opts);
}

AscentResult nu_maximize(const DiscreteDomain& domain, const ConformalFactor& init,
                         const AscentOptions& opts) {
    if (opts.steps < 0) throw Error("nu_maximize: steps must be >= 0");
    if (!init.domain.same_grid(domain))
        throw DomainMismatch("nu_maximize: init factor built on a different grid");

    ConformalFactor factor = normalize_area(init);
    SpectralProblem prob = assemble(domain, factor);
    SolveOptions sopts;
    sopts.tol = opts.eigen_tol;
    sopts.seed = opts.seed;
    BlockSolver solver(prob, sopts);

    int k = std::max(opts.eigen_k, 2);
    EigenResult ev = solver.solve(k, opts.eigen_tol);
    double lambda = ev.eigenvalues[1];
    AscentResult out;
    out.trace.push_back(lambda);

    const double cell = domain.cell_area();
    const double uniform_level = 1.0 / domain.area();
    const int n = domain.num_nodes();
    double step_memory = opts.step_size;  // last accepted step, line-search start

    for (int step = 0; step < opts.steps; ++step) {
        DensityGradient grad = lambda1_density_gradient(prob, ev);
        if (grad.cluster_size >= k - 1 && k < 12) {
            // Cluster may be truncated; widen the window and retry.
            k = std::min(12, grad.cluster_size + 3);
            ev = solver.solve(k, opts.eigen_tol);
            grad = lambda1_density_gradient(prob, ev);
        }

        // Remove the area-weighted mean, then scale to the uniform
        // density level so step_size is dimensionless.
        double mean = 0.0;
        for (double v : grad.field.values) mean += v;
        mean /= n;
        double sup = 0.0;
        for (double& v : grad.field.values) {
            v -= mean;
            sup = std::max(sup, std::abs(v));
        }
        if (sup <= 0.0) break;  // stationary (e.g. exactly flat start)
        // Scale the step to the current concentration level, not just
        // the uniform density, so sharpening a peak does not stall.
        double rho_max = 0.0;
        for (double v : factor.rho.values) rho_max = std::max(rho_max, v);
        const double dir_scale = std::max(uniform_level, 0.2 * rho_max) / sup;

        bool accepted = false;
        double s = step_memory;
        for (int bt = 0; bt <= opts.max_backtracks && !accepted; ++bt) {
            ConformalFactor trial = factor;
            for (int idx = 0; idx < n; ++idx) {
                double v = factor.rho.values[idx] + s * dir_scale * grad.field.values[idx];
                trial.rho.values[idx] = std::max(v, opts.rho_min);
            }
            trial = normalize_area(std::move(trial));
            Eigen::VectorXd mass =
                Eigen::Map<const Eigen::VectorXd>(trial.rho.values.data(), n) * cell;
            solver.set_mass(mass);
            EigenResult trial_ev = solver.solve(k, opts.eigen_tol);
            const double trial_lambda = trial_ev.eigenvalues[1];
            if (trial_lambda >= lambda - 1e-12 * std::max(1.0, std::abs(lambda))) {
                factor = std::move(trial);
                prob.mass = mass;
                ev = std::move(trial_ev);
                lambda = trial_lambda;
                accepted = true;
                step_memory = std::min(opts.step_size, 2.0 * s);
            } else {
                s *= 0.5;
            }
        }
        if (!accepted) {
            // Restore the solver's mass to the accepted factor.
            Eigen::VectorXd mass =
                Eigen::Map<const Eigen::VectorXd>(factor.rho.values.data(), n) * cell;
            solver.set_mass(mass);
            break;
        }
        out.trace.push_back(lambda);
    }
    out.factor = std::move(factor);
    return out;
}

}  // namespace sslab
