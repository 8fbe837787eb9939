#include "grushin/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "grushin/errors.hpp"

namespace grushin {

ScalarField::ScalarField(const Grid& g, std::vector<double> v)
    : grid(&g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != g.count())
        throw ConfigError("ScalarField: value count does not match grid interior");
}

namespace {

// Fraction of the cell [x-hx/2,x+hx/2] x [y-hy/2,y+hy/2] inside the domain,
// estimated with a 16x16 midpoint subsample.  Only called on cells that
// straddle the boundary.
double cell_fraction(const Domain& d, double x, double y, double hx, double hy) {
    const int m = 16;
    int inside = 0;
    for (int a = 0; a < m; ++a) {
        double px = x - 0.5 * hx + (a + 0.5) * hx / m;
        for (int b = 0; b < m; ++b) {
            double py = y - 0.5 * hy + (b + 0.5) * hy / m;
            if (d.contains(px, py)) ++inside;
        }
    }
    return static_cast<double>(inside) / (m * m);
}

} // namespace

Grid build_grid(const Domain& domain, int nx, int ny) {
    if (nx < 8 || ny < 8)
        throw GridError("build_grid: need nx,ny >= 8 (got " + std::to_string(nx) +
                        "x" + std::to_string(ny) + ")");

    Grid g;
    g.domain = domain;
    g.nx = nx;
    g.ny = ny;
    double bx1, by1;
    domain.bounding_box(g.x0, bx1, g.y0, by1);
    g.hx = (bx1 - g.x0) / (nx - 1);
    g.hy = (by1 - g.y0) / (ny - 1);

    g.interior.assign(static_cast<std::size_t>(nx) * ny, -1);
    const bool rect = domain.kind == DomainKind::Rectangle;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            bool in;
            if (rect) {
                in = i > 0 && i < nx - 1 && j > 0 && j < ny - 1;
            } else {
                in = domain.contains(g.x_coord(i), g.y_coord(j));
            }
            if (!in) continue;
            g.interior[static_cast<std::size_t>(i) * ny + j] = g.count();
            g.node_i.push_back(i);
            g.node_j.push_back(j);
            g.node_x.push_back(g.x_coord(i));
            g.node_y.push_back(g.y_coord(j));
        }
    }
    if (g.count() < 4)
        throw GridError("build_grid: degenerate grid, fewer than 4 interior nodes");

    // Nodal quadrature weights.
    g.quad_w.resize(g.count());
    if (rect) {
        // Cell widths extended to cover the half-cell strip up to the
        // boundary: first and last interior nodes own 1.5h in that axis, so
        // the weights tile the whole rectangle.
        auto axis_w = [](int idx, int n, double h) {
            return (idx == 1 || idx == n - 2) ? 1.5 * h : h;
        };
        for (int n = 0; n < g.count(); ++n)
            g.quad_w[n] = axis_w(g.node_i[n], nx, g.hx) * axis_w(g.node_j[n], ny, g.hy);
    } else {
        for (int n = 0; n < g.count(); ++n) {
            double x = g.node_x[n], y = g.node_y[n];
            // Convexity: the cell is entirely inside iff its corners are.
            bool full = domain.contains(x - 0.5 * g.hx, y - 0.5 * g.hy) &&
                        domain.contains(x + 0.5 * g.hx, y - 0.5 * g.hy) &&
                        domain.contains(x - 0.5 * g.hx, y + 0.5 * g.hy) &&
                        domain.contains(x + 0.5 * g.hx, y + 0.5 * g.hy);
            double frac = full ? 1.0 : cell_fraction(domain, x, y, g.hx, g.hy);
            g.quad_w[n] = g.hx * g.hy * frac;
        }
    }
    return g;
}

double interpolate(const ScalarField& u, double x, double y) {
    const Grid& g = *u.grid;
    double tx = (x - g.x0) / g.hx;
    double ty = (y - g.y0) / g.hy;
    tx = std::clamp(tx, 0.0, static_cast<double>(g.nx - 1));
    ty = std::clamp(ty, 0.0, static_cast<double>(g.ny - 1));
    int i = std::min(static_cast<int>(tx), g.nx - 2);
    int j = std::min(static_cast<int>(ty), g.ny - 2);
    double fx = tx - i, fy = ty - j;

    auto val = [&](int ii, int jj) {
        int n = g.index(ii, jj);
        return n >= 0 ? u.values[n] : 0.0;
    };
    return (1 - fx) * (1 - fy) * val(i, j) + fx * (1 - fy) * val(i + 1, j) +
           (1 - fx) * fy * val(i, j + 1) + fx * fy * val(i + 1, j + 1);
}

ScalarField prolong(const ScalarField& coarse, const Grid& fine) {
    ScalarField out(fine);
    for (int n = 0; n < fine.count(); ++n)
        out.values[n] = interpolate(coarse, fine.node_x[n], fine.node_y[n]);
    return out;
}

} // namespace grushin
