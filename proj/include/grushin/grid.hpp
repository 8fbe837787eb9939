#pragma once

#include <vector>

#include "grushin/domain.hpp"

namespace grushin {

// Tensor grid over the domain bounding box with an interior-node mask.
// Interior nodes (signed_inside < 0) carry the unknowns; everything else is
// homogeneous Dirichlet data and is never stored.
struct Grid {
    Domain domain;
    int nx = 0, ny = 0;
    double hx = 0, hy = 0;
    double x0 = 0, y0 = 0; // bounding-box lower corner

    std::vector<int> interior;    // nx*ny entries: unknown index or -1
    std::vector<int> node_i, node_j;   // per unknown
    std::vector<double> node_x, node_y;
    std::vector<double> quad_w;   // nodal quadrature weight per unknown

    int count() const { return static_cast<int>(node_x.size()); }
    double x_coord(int i) const { return x0 + i * hx; }
    double y_coord(int j) const { return y0 + j * hy; }
    int index(int i, int j) const {
        if (i < 0 || i >= nx || j < 0 || j >= ny) return -1;
        return interior[static_cast<std::size_t>(i) * ny + j];
    }
};

// Nodal values on the interior nodes of a grid; the boundary value 0 is
// structural, not stored.
struct ScalarField {
    const Grid* grid = nullptr;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const Grid& g) : grid(&g), values(g.count(), 0.0) {}
    ScalarField(const Grid& g, std::vector<double> v);
};

// nx, ny >= 8 nodes per axis.  Throws GridError when the interior has fewer
// than 4 nodes or the axis counts are too small to mean anything.
Grid build_grid(const Domain& domain, int nx, int ny);

// Bilinear interpolation of the field extended by zero to non-interior
// nodes.  The point is clamped to the grid bounding box.
double interpolate(const ScalarField& u, double x, double y);

// Sample a coarse-grid field at the nodes of a fine grid on the same domain.
ScalarField prolong(const ScalarField& coarse, const Grid& fine);

} // namespace grushin
