#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace sslab {

/// Scalar field sampled at the nodes of a rectangular grid, row-major
/// (x fastest). Node (i, j) sits at (i*hx, j*hy).
struct GridField {
    int nx = 0;
    int ny = 0;
    std::vector<double> values;

    GridField() = default;
    GridField(int nx_, int ny_, double fill = 0.0)
        : nx(nx_), ny(ny_), values(static_cast<std::size_t>(nx_) * ny_, fill) {}

    double& operator()(int i, int j) {
        assert(i >= 0 && i < nx && j >= 0 && j < ny);
        return values[static_cast<std::size_t>(j) * nx + i];
    }
    double operator()(int i, int j) const {
        assert(i >= 0 && i < nx && j >= 0 && j < ny);
        return values[static_cast<std::size_t>(j) * nx + i];
    }

    int size() const { return nx * ny; }
};

}  // namespace sslab
