#include "sslab/spheremaps.hpp"

#include <algorithm>
#include <cmath>

#include "sslab/errors.hpp"

namespace sslab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kBallEdge = 1.0 - 1e-6;

/// Householder-style rotation taking `axis` (unit) to the last
/// coordinate direction e_{n}.
Eigen::MatrixXd rotation_to_pole(const Eigen::VectorXd& axis) {
    const int n = static_cast<int>(axis.size());
    Eigen::VectorXd pole = Eigen::VectorXd::Zero(n);
    pole[n - 1] = 1.0;
    Eigen::VectorXd v = axis + pole;
    const double vv = v.squaredNorm();
    if (vv < 1e-14) {
        // axis == -pole: reflect through the plane orthogonal to pole.
        Eigen::MatrixXd r = Eigen::MatrixXd::Identity(n, n);
        r(n - 1, n - 1) = -1.0;
        return r;
    }
    // R = 2 v v^T / (v^T v) - I maps axis to pole and is orthogonal.
    return 2.0 / vv * (v * v.transpose()) - Eigen::MatrixXd::Identity(n, n);
}

/// Stereographic chart of S^n from the pole -e_n: plane coords u of the
/// sphere point s, with sigma(0) = -e_n.
Eigen::VectorXd to_plane(const Eigen::VectorXd& s) {
    const int n = static_cast<int>(s.size());
    const double denom = 1.0 - s[n - 1];
    return s.head(n - 1) / denom;
}

Eigen::VectorXd from_plane(const Eigen::VectorXd& u) {
    const int n = static_cast<int>(u.size()) + 1;
    const double r2 = u.squaredNorm();
    Eigen::VectorXd s(n);
    s.head(n - 1) = 2.0 * u;
    s[n - 1] = r2 - 1.0;
    return s / (r2 + 1.0);
}

double dilation_scale(const MoebiusParam& c) {
    const double r = c.c.norm();
    return (1.0 + r) / (1.0 - r);
}

}  // namespace

double DiscreteMeasure::total() const {
    double sum = 0.0;
    for (double w : weights) sum += w;
    return sum;
}

Vec3 stereographic(double u, double v) {
    const double r2 = u * u + v * v;
    return Vec3(2.0 * u, 2.0 * v, r2 - 1.0) / (1.0 + r2);
}

Vec3 torus_transplant(double x, double y) {
    // w = exp(-2 pi i (x + i y)) = exp(2 pi y) (cos 2 pi x, -sin 2 pi x)
    const double radius = std::exp(2.0 * kPi * y);
    return stereographic(radius * std::cos(2.0 * kPi * x), -radius * std::sin(2.0 * kPi * x));
}

Vec3 mobius_strip_map(double x, double y) {
    const double ey = std::exp(y);
    const double e2y = ey * ey;
    return Vec3(2.0 * ey * std::cos(x), 2.0 * ey * std::sin(x), e2y - 1.0) / (e2y + 1.0);
}

Vec5 veronese(const Vec3& q) {
    constexpr double kSqrt3 = 1.7320508075688772935;
    if (std::abs(q.norm() - kSqrt3) > 1e-9)
        throw NotOnSphere("veronese: input must lie on the radius-sqrt(3) sphere");
    const double x = q[0], y = q[1], z = q[2];
    Vec5 v;
    v << x * y / kSqrt3, x * z / kSqrt3, y * z / kSqrt3,
        (x * x - y * y) / (2.0 * kSqrt3), (x * x + y * y - 2.0 * z * z) / 6.0;
    return v;
}

Eigen::VectorXd mobius_transform(const MoebiusParam& c, const Eigen::VectorXd& s) {
    const double r = c.c.norm();
    if (r >= 1.0) throw Error("mobius_transform: parameter must lie in the open unit ball");
    if (r < 1e-15) return s;
    const Eigen::MatrixXd rot = rotation_to_pole(c.c / r);
    const double t = dilation_scale(c);
    Eigen::VectorXd rotated = rot * s;
    const int n = static_cast<int>(s.size());
    if (rotated[n - 1] > 1.0 - 1e-14) {
        // The chart pole is a fixed point of the dilation.
        return rot.transpose() * rotated;
    }
    Eigen::VectorXd plane = to_plane(rotated);
    return rot.transpose() * from_plane((t * plane).eval());
}

double mobius_conformal_density(const MoebiusParam& c, const Eigen::VectorXd& s) {
    const double r = c.c.norm();
    if (r >= 1.0)
        throw Error("mobius_conformal_density: parameter must lie in the open unit ball");
    if (r < 1e-15) return 1.0;
    const Eigen::MatrixXd rot = rotation_to_pole(c.c / r);
    const double t = dilation_scale(c);
    Eigen::VectorXd rotated = rot * s;
    const int n = static_cast<int>(s.size());
    double u2;
    if (rotated[n - 1] > 1.0 - 1e-14) {
        // Linear factor at the chart pole is 1/t.
        return 1.0 / (t * t);
    }
    u2 = to_plane(rotated).squaredNorm();
    const double linear = t * (1.0 + u2) / (1.0 + t * t * u2);
    return linear * linear;
}

Eigen::VectorXd center_of_mass(const DiscreteMeasure& mu, const MoebiusParam& c) {
    if (mu.atoms.empty()) throw Error("center_of_mass: empty measure");
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(mu.dim());
    for (std::size_t i = 0; i < mu.atoms.size(); ++i)
        sum += mu.weights[i] * mobius_transform(c, mu.atoms[i]);
    return sum / mu.total();
}

MoebiusParam hersch_renormalize(const DiscreteMeasure& mu, double tol, int max_iters) {
    if (mu.atoms.empty()) throw DegenerateMeasure("hersch_renormalize: empty measure");
    const double total = mu.total();
    for (double w : mu.weights) {
        if (w <= 0.0) throw Error("hersch_renormalize: weights must be positive");
        if (w >= 0.5 * total)
            throw DegenerateMeasure(
                "hersch_renormalize: one atom carries at least half the mass");
    }

    MoebiusParam c(mu.dim());
    Eigen::VectorXd m = center_of_mass(mu, c);
    double res = m.norm();
    double eta = 0.5;
    for (int iter = 0; iter < max_iters; ++iter) {
        if (res <= tol) return c;
        bool accepted = false;
        for (int back = 0; back < 40; ++back) {
            Eigen::VectorXd cand = c.c - eta * m;
            const double norm = cand.norm();
            if (norm > kBallEdge) cand *= kBallEdge / norm;
            MoebiusParam trial(cand);
            Eigen::VectorXd m_trial = center_of_mass(mu, trial);
            const double res_trial = m_trial.norm();
            if (res_trial < res) {
                c = std::move(trial);
                m = std::move(m_trial);
                res = res_trial;
                eta = std::min(1.0, 2.0 * eta);
                accepted = true;
                break;
            }
            eta *= 0.5;
        }
        if (!accepted)
            throw NoConvergence("hersch_renormalize: residual descent stalled", res, iter);
    }
    if (res <= tol) return c;
    throw NoConvergence("hersch_renormalize: iteration budget exhausted", res, max_iters);
}

SphereMesh latlong_mesh(int n_theta, int n_phi, double radius) {
    SphereMesh mesh;
    mesh.points.reserve(static_cast<std::size_t>(n_theta) * n_phi);
    mesh.weights.reserve(static_cast<std::size_t>(n_theta) * n_phi);
    const double dt = kPi / n_theta;
    const double dp = 2.0 * kPi / n_phi;
    for (int i = 0; i < n_theta; ++i) {
        const double theta = (i + 0.5) * dt;
        const double w = radius * radius * std::sin(theta) * dt * dp;
        for (int j = 0; j < n_phi; ++j) {
            const double phi = (j + 0.5) * dp;
            mesh.points.emplace_back(radius * std::sin(theta) * std::cos(phi),
                                     radius * std::sin(theta) * std::sin(phi),
                                     radius * std::cos(theta));
            mesh.weights.push_back(w);
        }
    }
    return mesh;
}

double tangent_gradient_sq(const std::function<double(const Vec3&)>& f, const Vec3& p,
                           double h) {
    const double radius = p.norm();
    Vec3 helper = std::abs(p[0]) < 0.9 * radius ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
    const Vec3 e1 = p.cross(helper).normalized();
    const Vec3 e2 = p.cross(e1).normalized();
    double sum = 0.0;
    for (const Vec3& e : {e1, e2}) {
        const Vec3 plus = radius * (p + h * e).normalized();
        const Vec3 minus = radius * (p - h * e).normalized();
        const double d = (f(plus) - f(minus)) / (2.0 * h);
        sum += d * d;
    }
    return sum;
}

}  // namespace sslab
