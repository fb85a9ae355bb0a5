#pragma once

#include <array>
#include <vector>

namespace sslab {

enum class SurfaceKind { Torus, Klein };

/// Coordinates of a conformal class: (a, b) for a torus, b alone for a
/// Klein bottle. b > 0 always.
struct ModuliPoint {
    SurfaceKind kind = SurfaceKind::Torus;
    double a = 0.0;
    double b = 1.0;

    /// True when a torus point lies in the fundamental domain
    /// 0 <= a <= 1/2, a^2 + b^2 >= 1 (always true for Klein points).
    bool is_reduced(double tol = 1e-12) const;
};

enum class Gluing { TorusShift, KleinReflect };

/// Rectangular grid over a fundamental domain plus the gluing rule that
/// encodes the surface's topology.
///
/// TorusShift: width 1, height b; crossing the top edge at column i
/// re-enters the bottom edge at column (i - shift_cells) mod nx.
/// KleinReflect: width pi, height b; crossing the right edge at row j
/// re-enters the left edge at row (ny - j) mod ny; top/bottom periodic.
struct DiscreteDomain {
    double width = 1.0;
    double height = 1.0;
    int nx = 0;
    int ny = 0;
    Gluing gluing = Gluing::TorusShift;
    int shift_cells = 0;

    double hx() const { return width / nx; }
    double hy() const { return height / ny; }
    double cell_area() const { return hx() * hy(); }
    double area() const { return width * height; }
    int num_nodes() const { return nx * ny; }

    int index(int i, int j) const { return j * nx + i; }

    /// Stencil neighbours of node (i, j) resolved through the gluing,
    /// in the order {+x, -x, +y, -y}.
    std::array<int, 4> neighbors(int i, int j) const;

    bool same_grid(const DiscreteDomain& o) const {
        return nx == o.nx && ny == o.ny && gluing == o.gluing &&
               shift_cells == o.shift_cells && width == o.width && height == o.height;
    }
};

/// Closed-form flat spectrum: sorted eigenvalues with multiplicities,
/// starting at the exact 0 of the constants, plus the flat area.
struct FlatSpectrum {
    std::vector<double> eigenvalues;
    double area = 0.0;
};

/// Grid over the torus fundamental cylinder [0,1) x [0,b) with the
/// lattice-shift gluing. Throws SnapViolation when a*nx is not an
/// integer within snap_tol.
DiscreteDomain torus_domain(double a, double b, int nx, int ny, double snap_tol = 1e-9);

/// Grid over the Klein rectangle [0,pi) x [0,b) with the reflecting
/// side gluing.
DiscreteDomain klein_domain(double b, int nx, int ny);

/// Smallest `count` eigenvalues 4*pi^2*(m^2 + (n - m*a)^2/b^2) of the
/// flat torus with lattice generated by 1 and a+ib. area = b.
FlatSpectrum flat_torus_spectrum(double a, double b, int count);

/// Smallest `count` eigenvalues m^2 + (2*pi*n/b)^2 of the flat Klein
/// bottle of width pi and height b, restricted to the parity-admissible
/// modes of the orientation double cover. area = pi*b.
FlatSpectrum flat_klein_spectrum(double b, int count);

/// Translation/inversion reduction of (a, b) into the fundamental
/// domain of torus conformal classes. Throws NonConvergence after 64
/// moves.
ModuliPoint moduli_reduce(double a, double b);

}  // namespace sslab
