#include "grushin/assemble.hpp"

#include <cmath>
#include <tuple>
#include <vector>

#include "grushin/errors.hpp"
#include "grushin/vecops.hpp"

namespace grushin {

namespace {

// Fraction of the lattice arm from an interior node to an exterior neighbor
// that lies inside the domain.  Bisection on the level set; the interior end
// is strictly inside, the far end is not.
double cut_fraction(const Domain& d, double x, double y, double dx, double dy) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        if (d.signed_inside(x + mid * dx, y + mid * dy) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    // Clamp away from zero so a node grazing the boundary cannot blow up the
    // matrix conditioning.
    return std::max(0.5 * (lo + hi), 1e-6);
}

} // namespace

SparseOperator assemble_grushin(const Grid& grid, double k) {
    if (!(k > 0.0))
        throw ConfigError("assemble_grushin: degeneracy exponent k must be positive");

    const bool rect = grid.domain.kind == DomainKind::Rectangle;
    std::vector<std::tuple<int, int, double>> trip;
    trip.reserve(static_cast<std::size_t>(grid.count()) * 5);

    // One pass per axis over lattice edges with at least one interior end.
    // Each edge contributes the bilinear block of (du/arm)*(dv/arm)*measure;
    // edges reaching the boundary only add to the diagonal (Dirichlet data
    // is zero).  Visiting edges from their low-index side visits each once.
    for (int n = 0; n < grid.count(); ++n) {
        int i = grid.node_i[n], j = grid.node_j[n];
        double x = grid.node_x[n], y = grid.node_y[n];
        double cy_coef = abs_pow(x, 2.0 * k); // y-stencil coefficient, shared by both ends

        // x-direction edges: (i,j)-(i+1,j) owned by n; the edge to (i-1,j) is
        // owned by the neighbor unless that neighbor is not an unknown.
        for (int dir = -1; dir <= 1; dir += 2) {
            int nb = grid.index(i + dir, j);
            if (nb >= 0 && dir < 0) continue; // owned by the neighbor
            double arm = 1.0;
            if (nb < 0 && !rect)
                arm = cut_fraction(grid.domain, x, y, dir * grid.hx, 0.0);
            double w = grid.hy / (arm * grid.hx);
            trip.emplace_back(n, n, w);
            if (nb >= 0) {
                trip.emplace_back(nb, nb, w);
                trip.emplace_back(n, nb, -w);
                trip.emplace_back(nb, n, -w);
            }
        }

        // y-direction edges, coefficient |x|^{2k} frozen at the shared x.
        for (int dir = -1; dir <= 1; dir += 2) {
            int nb = grid.index(i, j + dir);
            if (nb >= 0 && dir < 0) continue;
            double arm = 1.0;
            if (nb < 0 && !rect)
                arm = cut_fraction(grid.domain, x, y, 0.0, dir * grid.hy);
            double w = cy_coef * grid.hx / (arm * grid.hy);
            if (w == 0.0) continue; // degenerate line x = 0
            trip.emplace_back(n, n, w);
            if (nb >= 0) {
                trip.emplace_back(nb, nb, w);
                trip.emplace_back(n, nb, -w);
                trip.emplace_back(nb, n, -w);
            }
        }
    }
    return SparseOperator::from_triplets(grid.count(), std::move(trip));
}

} // namespace grushin
