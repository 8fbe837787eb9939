#include "grushin/functional.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "grushin/errors.hpp"
#include "grushin/norms.hpp"
#include "grushin/vecops.hpp"

namespace grushin {

double phi(const ScalarField& u, const SparseOperator& A, const Nonlinearity& nl) {
    const Grid& g = *u.grid;
    if (A.size() != g.count())
        throw std::invalid_argument("phi: grid/operator mismatch");
    double quadratic = 0.5 * A.inner(u.values, u.values);
    KahanSum s;
    for (int n = 0; n < g.count(); ++n)
        s.add(g.quad_w[n] * nl.F(g.node_x[n], g.node_y[n], u.values[n]));
    return quadratic - s.value();
}

std::vector<double> phi_grad(const ScalarField& u, const SparseOperator& A,
                             const Nonlinearity& nl) {
    const Grid& g = *u.grid;
    if (A.size() != g.count())
        throw std::invalid_argument("phi_grad: grid/operator mismatch");
    std::vector<double> grad = A.multiply(u.values);
    for (int n = 0; n < g.count(); ++n)
        grad[n] -= g.quad_w[n] * nl.f(g.node_x[n], g.node_y[n], u.values[n]);
    return grad;
}

ScalarField riesz_gradient(std::span<const double> grad_dual, const Grid& grid,
                           const SparseOperator& A, const LinearSolverCfg& lin) {
    return ScalarField(grid, cg_solve(A, grad_dual, lin));
}

double dual_grad_norm(std::span<const double> grad_dual, const ScalarField& riesz) {
    return std::sqrt(std::max(0.0, dot(grad_dual, riesz.values)));
}

EnergyState make_energy_state(const ScalarField& u, const SparseOperator& A,
                              const Nonlinearity& nl, const LinearSolverCfg& lin) {
    EnergyState st;
    st.u = u;
    st.phi = phi(u, A, nl);
    st.grad_dual = phi_grad(u, A, nl);
    st.grad_riesz = riesz_gradient(st.grad_dual, *u.grid, A, lin);
    st.grad_norm = dual_grad_norm(st.grad_dual, st.grad_riesz);
    return st;
}

SmallSideProbe probe_mountain_small_side(const Grid& grid, const SparseOperator& A,
                                         const Nonlinearity& nl, int directions,
                                         std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<ScalarField> dirs;
    dirs.reserve(directions);
    for (int d = 0; d < directions; ++d) {
        ScalarField v(grid);
        for (double& x : v.values) x = 2.0 * uniform01(rng) - 1.0;
        double en = norm_energy(v, A);
        if (en == 0.0) { --d; continue; }
        scale(v.values, 1.0 / en);
        dirs.push_back(std::move(v));
    }

    // Worst-case energy at radius rho over the sampled directions.
    auto worst = [&](double rho) {
        double m = std::numeric_limits<double>::infinity();
        ScalarField scaled(grid);
        for (const ScalarField& d : dirs) {
            scaled.values = d.values;
            scale(scaled.values, rho);
            m = std::min(m, phi(scaled, A, nl));
        }
        return m;
    };

    SmallSideProbe probe;
    probe.alpha = -std::numeric_limits<double>::infinity();
    for (int m = -24; m <= 8; ++m) {
        double rho = std::ldexp(1.0, m);
        double a = worst(rho);
        if (a > probe.alpha) {
            probe.alpha = a;
            probe.rho = rho;
        }
    }
    return probe;
}

FarSideProbe probe_mountain_far_side(const Grid& grid, const SparseOperator& A,
                                     const Nonlinearity& nl) {
    // Positive bump supported away from the degenerate line: centered in the
    // wider of the two half-domains {|x| >= 0.1}.
    double bx0, bx1, by0, by1;
    grid.domain.bounding_box(bx0, bx1, by0, by1);
    double side = (bx1 >= -bx0) ? 1.0 : -1.0;
    double extent = side > 0 ? bx1 - 0.1 : -0.1 - bx0;
    if (extent <= 0.0)
        throw ConfigError("far-side probe: domain has no room beyond |x| >= 0.1");
    double cx = side * (0.1 + 0.5 * extent);
    double cy = 0.5 * (by0 + by1);
    double rx = 0.45 * extent;
    double ry = 0.25 * (by1 - by0);

    ScalarField u_hat(grid);
    for (int n = 0; n < grid.count(); ++n) {
        double qx = (grid.node_x[n] - cx) / rx;
        double qy = (grid.node_y[n] - cy) / ry;
        double r2 = qx * qx + qy * qy;
        u_hat.values[n] = r2 < 1.0 ? (1.0 - r2) * (1.0 - r2) : 0.0;
    }
    double en = norm_energy(u_hat, A);
    if (en == 0.0)
        throw ConfigError("far-side probe: bump support contains no interior node");
    scale(u_hat.values, 1.0 / en);

    FarSideProbe probe;
    probe.u_hat = u_hat;
    ScalarField scaled(grid);
    auto phi_at = [&](double R) {
        scaled.values = u_hat.values;
        scale(scaled.values, R);
        return phi(scaled, A, nl);
    };
    double R = 1.0;
    for (int it = 0; it < 80; ++it, R *= 2.0) {
        if (phi_at(R) < 0.0) {
            probe.R0 = R;
            probe.phis = {phi_at(R), phi_at(2 * R), phi_at(4 * R)};
            return probe;
        }
    }
    throw SolverError("far-side probe: Phi(R u) stayed nonnegative up to R = 2^80");
}

ScalarField make_mountain_endpoint(const Grid& grid, const SparseOperator& A,
                                   const Nonlinearity& nl) {
    FarSideProbe probe = probe_mountain_far_side(grid, A, nl);
    ScalarField u1 = probe.u_hat;
    scale(u1.values, 2.0 * probe.R0);
    return u1;
}

} // namespace grushin
