#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace sslab {

using Vec3 = Eigen::Vector3d;
using Vec5 = Eigen::Matrix<double, 5, 1>;

/// Point c in the open unit ball of R^(n+1) parametrizing a conformal
/// transformation of S^n: axis c/|c|, dilation t = (1+|c|)/(1-|c|).
/// c = 0 is the identity.
struct MoebiusParam {
    Eigen::VectorXd c;

    explicit MoebiusParam(int dim = 3) : c(Eigen::VectorXd::Zero(dim)) {}
    explicit MoebiusParam(Eigen::VectorXd c_) : c(std::move(c_)) {}
    int dim() const { return static_cast<int>(c.size()); }
};

/// Weighted atoms on a sphere.
struct DiscreteMeasure {
    std::vector<Eigen::VectorXd> atoms;
    std::vector<double> weights;

    double total() const;
    int dim() const { return atoms.empty() ? 0 : static_cast<int>(atoms.front().size()); }
};

/// Stereographic parametrization of S^2 by its equatorial plane:
/// sigma(u + iv) = (2u, 2v, u^2 + v^2 - 1) / (1 + u^2 + v^2).
Vec3 stereographic(double u, double v);

/// Conformal equivalence of the unit-circumference cylinder with the
/// sphere minus its poles: sigma applied to w = exp(-2 pi i z).
Vec3 torus_transplant(double x, double y);

/// Conformal map of the infinite Moebius strip onto RP^2 minus a point:
/// phi(x+iy) = (2 e^y cos x, 2 e^y sin x, e^{2y} - 1) / (e^{2y} + 1),
/// with phi(x + pi, -y) = -phi(x, y).
Vec3 mobius_strip_map(double x, double y);

/// Degree-2 minimal isometric embedding of the radius-sqrt(3)
/// projective plane in S^4. Throws NotOnSphere unless |q| = sqrt(3).
Vec5 veronese(const Vec3& q);

/// Rotation-conjugated stereographic dilation of S^n determined by c.
Eigen::VectorXd mobius_transform(const MoebiusParam& c, const Eigen::VectorXd& s);

/// Area scaling factor |d tau_c| at s (square of the linear conformal
/// factor). Integrates to 4 pi over S^2.
double mobius_conformal_density(const MoebiusParam& c, const Eigen::VectorXd& s);

/// Weighted mean of the transformed atoms, normalized by total mass.
Eigen::VectorXd center_of_mass(const DiscreteMeasure& mu, const MoebiusParam& c);

/// Damped residual descent for the conformal parameter balancing the
/// measure: |center_of_mass(mu, c)| <= tol. Throws DegenerateMeasure
/// when one atom carries at least half the mass, NoConvergence when the
/// iteration budget runs out.
MoebiusParam hersch_renormalize(const DiscreteMeasure& mu, double tol, int max_iters);

/// Midpoint latitude-longitude quadrature mesh of a round sphere.
struct SphereMesh {
    std::vector<Vec3> points;
    std::vector<double> weights;   // sums to 4 pi r^2
};
SphereMesh latlong_mesh(int n_theta, int n_phi, double radius = 1.0);

/// |grad f|^2 at p on the radius-|p| sphere by central differences
/// along an orthonormal tangent frame.
double tangent_gradient_sq(const std::function<double(const Vec3&)>& f, const Vec3& p,
                           double h = 1e-5);

}  // namespace sslab
