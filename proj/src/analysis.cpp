#include "grushin/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "grushin/assemble.hpp"
#include "grushin/errors.hpp"
#include "grushin/norms.hpp"
#include "grushin/solvers.hpp"
#include "grushin/vecops.hpp"

namespace grushin {

CriticalExponents critical_exponents(double k) {
    if (!(k > 0.0))
        throw ConfigError("critical_exponents: k must be positive");
    return {(4.0 + 5.0 * k) / k, (4.0 + 6.0 * k) / k};
}

double pohozaev_coefficient(double k, double p) {
    return (2.0 + 3.0 * k) / (p + 1.0) - 0.5 * k;
}

PohozaevReport pohozaev_evaluate(const ScalarField& u, const Domain& domain,
                                 double k, double p,
                                 const std::vector<BoundarySample>& boundary) {
    const Grid& g = *u.grid;
    PohozaevReport rep;
    rep.coeff = pohozaev_coefficient(k, p);

    // Volume side: coeff * int |x|^{2k} |u|^{p-1} u * u.
    KahanSum vol;
    for (int n = 0; n < g.count(); ++n)
        vol.add(g.quad_w[n] * abs_pow(g.node_x[n], 2.0 * k) *
                signed_pow(u.values[n], p) * u.values[n]);
    rep.lhs = rep.coeff * vol.value();

    // Surface side: 1/2 * sum w [x nu_x + (1+k) y nu_y]
    //                          (nu_x^2 + |x|^{2k} nu_y^2) (du/dnu)^2.
    const double h = std::min(g.hx, g.hy);
    double bx0, bx1, by0, by1;
    domain.bounding_box(bx0, bx1, by0, by1);
    KahanSum surf;
    double min_factor = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < boundary.size(); ++s) {
        const BoundarySample& bs = boundary[s];
        double p1x = bs.x - h * bs.nu_x, p1y = bs.y - h * bs.nu_y;
        double p2x = bs.x - 2.0 * h * bs.nu_x, p2y = bs.y - 2.0 * h * bs.nu_y;
        const double pad = 1e-12 * (std::abs(bx1 - bx0) + std::abs(by1 - by0));
        if (p2x < bx0 - pad || p2x > bx1 + pad || p2y < by0 - pad || p2y > by1 + pad)
            throw SolverError("pohozaev_evaluate: probe left the grid at boundary sample " +
                              std::to_string(s));
        // Quadratic through u(0)=0, u(-h), u(-2h) along the outward normal.
        double du = -(4.0 * interpolate(u, p1x, p1y) - interpolate(u, p2x, p2y)) /
                    (2.0 * h);
        double star = bs.x * bs.nu_x + (1.0 + k) * bs.y * bs.nu_y;
        min_factor = std::min(min_factor, star);
        double aniso = bs.nu_x * bs.nu_x + abs_pow(bs.x, 2.0 * k) * bs.nu_y * bs.nu_y;
        surf.add(bs.weight * star * aniso * du * du);
    }
    rep.rhs = 0.5 * surf.value();
    rep.boundary_min_factor = min_factor;
    rep.rel_residual = std::abs(rep.lhs - rep.rhs) /
                       std::max({std::abs(rep.lhs), std::abs(rep.rhs), 1e-300});
    return rep;
}

TrendReport nonexistence_trend(const Domain& domain, double k, double p,
                               const std::vector<std::pair<int, int>>& grids,
                               std::uint64_t seed, const MpaCfg& cfg,
                               const LinearSolverCfg& lin) {
    {
        auto samples = boundary_quadrature(domain, 512);
        StarshapeResult star = starshape_check(domain, k, samples);
        if (!star.is_starshaped)
            throw ConfigError("nonexistence_trend: domain is not G_k-starshaped "
                              "(min boundary factor " + std::to_string(star.min_value) + ")");
    }
    if (grids.size() < 3)
        throw ConfigError("nonexistence_trend: need at least 3 refinement levels");

    TrendReport rep;
    rep.supercritical = p > critical_exponents(k).p_crit;

    Nonlinearity nl = Nonlinearity::pure_power(p, k);
    ScalarField prev_solution;
    Grid prev_grid;
    for (const auto& [nx, ny] : grids) {
        Grid grid = build_grid(domain, nx, ny);
        SparseOperator A = assemble_grushin(grid, k);
        SolveReport sol;
        if (prev_solution.grid) {
            ScalarField warm = prolong(prev_solution, grid);
            sol = nehari_minimize(A, nl, grid, seed, cfg, lin, &warm);
        } else {
            sol = nehari_minimize(A, nl, grid, seed, cfg, lin);
        }
        TrendPoint pt;
        pt.nx = nx;
        pt.ny = ny;
        pt.level = sol.level;
        pt.max_norm = max_abs(sol.u_star.values);
        pt.grad_norm = sol.grad_norm;
        rep.points.push_back(pt);
        prev_grid = std::move(grid);
        prev_solution = sol.u_star;
        prev_solution.grid = &prev_grid;
    }

    // Trend label: every refinement must drop the level and grow the max
    // norm by more than the stabilization threshold; a converging sequence
    // fails this and reads "inconclusive".
    const double thresh = 0.02;
    bool trending = true;
    for (std::size_t i = 1; i < rep.points.size(); ++i) {
        double dl = (rep.points[i].level - rep.points[i - 1].level) /
                    std::max(std::abs(rep.points[i - 1].level), 1e-300);
        double dm = (rep.points[i].max_norm - rep.points[i - 1].max_norm) /
                    std::max(rep.points[i - 1].max_norm, 1e-300);
        if (!(dl < -thresh && dm > thresh)) trending = false;
    }
    rep.verdict = trending ? "consistent-with-nonexistence" : "inconclusive";
    return rep;
}

EmbeddingReport embedding_constant(const SparseOperator& A, const Grid& grid,
                                   double k, double q, std::uint64_t seed,
                                   int iters) {
    double two_k = critical_exponents(k).two_k;
    if (!(q >= 1.0 && q <= two_k))
        throw ConfigError("embedding_constant: q must lie in [1, two_k]");

    std::mt19937_64 rng(seed);
    ScalarField u(grid);
    for (double& v : u.values) v = 2.0 * uniform01(rng) - 1.0;

    auto energy_normalize = [&](ScalarField& w) {
        double en = norm_energy(w, A);
        if (en > 0.0) scale(w.values, 1.0 / en);
        return en;
    };
    if (energy_normalize(u) == 0.0)
        throw SolverError("embedding_constant: zero start field");

    auto ratio_of = [&](const ScalarField& w) {
        double en = norm_energy(w, A);
        return en > 0.0 ? norm_Lpk(w, q, k) / en : 0.0;
    };

    double ratio = ratio_of(u);
    LinearSolverCfg lin;
    int it = 0;
    int stale = 0;
    for (; it < iters && stale < 3; ++it) {
        // Dual ascent direction of log ||u||_q - log ||u||_A on the sphere.
        double lq = norm_Lpk(u, q, k);
        std::vector<double> dual(grid.count());
        for (int n = 0; n < grid.count(); ++n)
            dual[n] = grid.quad_w[n] * abs_pow(grid.node_x[n], 2.0 * k) *
                      signed_pow(u.values[n], q - 1.0) / std::pow(lq, q);
        std::vector<double> Au = A.multiply(u.values);
        for (int n = 0; n < grid.count(); ++n) dual[n] -= Au[n];
        ScalarField dir(grid, cg_solve(A, dual, lin));

        // Golden-section line search on the ratio along the direction.
        auto eval = [&](double s) {
            ScalarField trial = u;
            axpy(s, dir.values, trial.values);
            return ratio_of(trial);
        };
        double lo = 0.0, hi = 1.0;
        while (hi < 64.0 && eval(2.0 * hi) > eval(hi)) hi *= 2.0;
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double a = lo, b = hi, x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = eval(x1), f2 = eval(x2);
        for (int g = 0; g < 40; ++g) {
            if (f1 < f2) {
                a = x1; x1 = x2; f1 = f2;
                x2 = a + gr * (b - a); f2 = eval(x2);
            } else {
                b = x2; x2 = x1; f2 = f1;
                x1 = b - gr * (b - a); f1 = eval(x1);
            }
        }
        double best_s = 0.5 * (a + b);
        double best = eval(best_s);
        if (best > ratio * (1.0 + 1e-13)) {
            axpy(best_s, dir.values, u.values);
            energy_normalize(u);
            ratio = ratio_of(u);
            stale = 0;
        } else {
            ++stale;
        }
    }

    EmbeddingReport rep;
    rep.q = q;
    rep.k = k;
    rep.C_q_estimate = ratio;
    rep.maximizer = u;
    rep.iterations = it;
    return rep;
}

CompactnessReport compactness_probe(const SparseOperator& A, const Grid& grid,
                                    double k, double q,
                                    std::vector<ScalarField> fields,
                                    std::uint64_t seed, int count) {
    double two_k = critical_exponents(k).two_k;
    if (!(q < two_k))
        throw ConfigError("compactness_probe: compactness requires q < two_k");
    if (!(q >= 1.0))
        throw ConfigError("compactness_probe: q must be >= 1");

    if (fields.empty()) {
        std::mt19937_64 rng(seed);
        for (int c = 0; c < count; ++c) {
            ScalarField f(grid);
            for (double& v : f.values) v = 2.0 * uniform01(rng) - 1.0;
            double en = norm_energy(f, A);
            if (en > 0.0) scale(f.values, 1.0 / en);
            fields.push_back(std::move(f));
        }
    }

    // Coarse space: bilinear bumps on a 5x5 lattice over the bounding box,
    // restricted to interior nodes.  The energy-orthogonal projector comes
    // from the small Gram system.
    const int cm = 5;
    double bx0, bx1, by0, by1;
    grid.domain.bounding_box(bx0, bx1, by0, by1);
    std::vector<ScalarField> basis;
    for (int a = 1; a + 1 < cm; ++a) {
        for (int b = 1; b + 1 < cm; ++b) {
            double cx = bx0 + (bx1 - bx0) * a / (cm - 1);
            double cy = by0 + (by1 - by0) * b / (cm - 1);
            double sx = (bx1 - bx0) / (cm - 1), sy = (by1 - by0) / (cm - 1);
            ScalarField f(grid);
            bool nonzero = false;
            for (int n = 0; n < grid.count(); ++n) {
                double tx = 1.0 - std::abs(grid.node_x[n] - cx) / sx;
                double ty = 1.0 - std::abs(grid.node_y[n] - cy) / sy;
                if (tx > 0.0 && ty > 0.0) {
                    f.values[n] = tx * ty;
                    nonzero = true;
                }
            }
            if (nonzero) basis.push_back(std::move(f));
        }
    }

    const int nb = static_cast<int>(basis.size());
    std::vector<double> gram(nb * nb);
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j <= i; ++j)
            gram[i * nb + j] = gram[j * nb + i] =
                A.inner(basis[i].values, basis[j].values);
    // Cholesky of the small Gram matrix.
    std::vector<double> L = gram;
    for (int i = 0; i < nb; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = L[i * nb + j];
            for (int r = 0; r < j; ++r) s -= L[i * nb + r] * L[j * nb + r];
            if (i == j) {
                L[i * nb + i] = std::sqrt(std::max(s, 1e-300));
            } else {
                L[i * nb + j] = s / L[j * nb + j];
            }
        }
        for (int j = i + 1; j < nb; ++j) L[i * nb + j] = 0.0;
    }
    auto project_out = [&](const ScalarField& f) {
        std::vector<double> rhs(nb);
        for (int i = 0; i < nb; ++i) rhs[i] = A.inner(basis[i].values, f.values);
        // forward/back substitution
        for (int i = 0; i < nb; ++i) {
            for (int r = 0; r < i; ++r) rhs[i] -= L[i * nb + r] * rhs[r];
            rhs[i] /= L[i * nb + i];
        }
        for (int i = nb - 1; i >= 0; --i) {
            for (int r = i + 1; r < nb; ++r) rhs[i] -= L[r * nb + i] * rhs[r];
            rhs[i] /= L[i * nb + i];
        }
        ScalarField res = f;
        for (int i = 0; i < nb; ++i) axpy(-rhs[i], basis[i].values, res.values);
        return res;
    };

    CompactnessReport rep;
    for (const ScalarField& f : fields) {
        rep.energies.push_back(norm_energy(f, A));
        rep.distances.push_back(norm_Lpk(project_out(f), q, k));
    }
    // Greedy decreasing subsequence of the distance profile.
    double last = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rep.distances.size(); ++i) {
        if (rep.distances[i] <= last) {
            rep.subsequence.push_back(static_cast<int>(i));
            last = rep.distances[i];
        }
    }
    return rep;
}

} // namespace grushin
