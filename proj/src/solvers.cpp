#include "grushin/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <tuple>

#include "grushin/analysis.hpp"
#include "grushin/errors.hpp"
#include "grushin/norms.hpp"
#include "grushin/vecops.hpp"

namespace grushin {

void MpaCfg::validate() const {
    if (path_points < 3) throw ConfigError("solver: path_points must be >= 3");
    if (!(descent_step0 > 0)) throw ConfigError("solver: descent_step0 must be positive");
    if (!(armijo_c > 0)) throw ConfigError("solver: armijo_c must be positive");
    if (!(grad_tol > 0)) throw ConfigError("solver: grad_tol must be positive");
    if (max_outer < 1) throw ConfigError("solver: max_outer must be >= 1");
    if (!(newton_switch > 0)) throw ConfigError("solver: newton_switch must be positive");
}

const char* to_string(SolveMethod m) {
    switch (m) {
        case SolveMethod::Nehari: return "nehari";
        case SolveMethod::Mpa: return "mpa";
        case SolveMethod::NewtonRefined: return "newton-refined";
    }
    return "?";
}

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

bool is_supercritical(const Nonlinearity& nl) {
    if (!nl.is_pure_power()) return false;
    return nl.p > critical_exponents(nl.k).p_crit;
}

// int |x|^{2k} |u|^{p+1}, the denominator of the Nehari scaling.
double power_mass(const ScalarField& u, const Nonlinearity& nl) {
    const Grid& g = *u.grid;
    KahanSum s;
    for (int n = 0; n < g.count(); ++n)
        s.add(g.quad_w[n] * abs_pow(g.node_x[n], 2.0 * nl.k) *
              abs_pow(u.values[n], nl.p + 1.0));
    return s.value();
}

} // namespace

NehariProjection nehari_project(const ScalarField& u, const SparseOperator& A,
                                const Nonlinearity& nl) {
    if (!nl.is_pure_power())
        throw ConfigError("nehari_project: only defined for the pure-power model");
    if (!(nl.p > 1.0))
        throw ConfigError("nehari_project: needs p > 1");
    double a = A.inner(u.values, u.values);
    double b = power_mass(u, nl);
    if (!(b > 0.0) || a == 0.0)
        throw SolverError("nehari_project: projection undefined, int |x|^{2k}|u|^{p+1} = " +
                          std::to_string(b));
    NehariProjection out;
    out.t_star = std::pow(a / b, 1.0 / (nl.p - 1.0));
    out.v = u;
    scale(out.v.values, out.t_star);
    return out;
}

ScalarField newton_refine(const ScalarField& u0, const SparseOperator& A,
                          const Nonlinearity& nl, const MpaCfg& cfg,
                          const LinearSolverCfg& lin, int* steps, bool* ok) {
    const Grid& g = *u0.grid;
    ScalarField u = u0;
    if (steps) *steps = 0;
    if (ok) *ok = false;

    std::vector<double> grad = phi_grad(u, A, nl);
    double res = norm2(grad);
    const int max_steps = 50;

    for (int it = 0; it < max_steps; ++it) {
        // Dual-metric convergence test.
        ScalarField riesz = riesz_gradient(grad, g, A, lin);
        double gnorm = dual_grad_norm(grad, riesz);
        if (gnorm <= cfg.grad_tol) {
            if (ok) *ok = true;
            return u;
        }

        // J = A - diag(w_i f'(u_i)); symmetric, possibly indefinite.
        std::vector<std::tuple<int, int, double>> trip;
        trip.reserve(g.count());
        for (int n = 0; n < g.count(); ++n)
            trip.emplace_back(n, n, -g.quad_w[n] *
                              nl.fprime(g.node_x[n], g.node_y[n], u.values[n]));
        SparseOperator J = SparseOperator::from_triplets(g.count(), std::move(trip));
        // Combine A and the diagonal shift by re-assembly.
        std::vector<std::tuple<int, int, double>> all;
        A.for_each([&](int r, int c, double v) { all.emplace_back(r, c, v); });
        J.for_each([&](int r, int c, double v) { all.emplace_back(r, c, v); });
        SparseOperator Jfull = SparseOperator::from_triplets(g.count(), std::move(all));

        std::vector<double> rhs(grad.size());
        for (std::size_t i = 0; i < grad.size(); ++i) rhs[i] = -grad[i];
        std::vector<double> delta;
        bool solved = minres_solve(Jfull, rhs, 1e-10, lin.iter_cap(g.count()), delta);
        if (!solved) return u; // fallback signal: caller keeps descending

        // Damping on the Euclidean residual of Phi'.
        double tau = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 30; ++bt, tau *= 0.5) {
            ScalarField trial = u;
            axpy(tau, delta, trial.values);
            std::vector<double> gtrial = phi_grad(trial, A, nl);
            double rtrial = norm2(gtrial);
            if (rtrial < res * (1.0 - 0.25 * tau)) {
                u = std::move(trial);
                grad = std::move(gtrial);
                res = rtrial;
                accepted = true;
                break;
            }
        }
        if (steps) ++*steps;
        if (!accepted) return u; // divergence: fall back to descent
    }
    return u;
}

SolveReport nehari_minimize(const SparseOperator& A, const Nonlinearity& nl,
                            const Grid& grid, std::uint64_t seed, const MpaCfg& cfg,
                            const LinearSolverCfg& lin, const ScalarField* u_init) {
    cfg.validate();
    if (!nl.is_pure_power())
        throw ConfigError("nehari_minimize: only defined for the pure-power model");
    auto t0 = clock_type::now();

    ScalarField u(grid);
    if (u_init) {
        if (u_init->grid->count() != grid.count())
            throw ConfigError("nehari_minimize: u_init grid mismatch");
        u = *u_init;
    } else {
        // Positive random start; positivity is preserved empirically by the
        // projected descent.
        std::mt19937_64 rng(seed);
        for (double& v : u.values) v = 0.5 + uniform01(rng);
    }

    ScalarField v = nehari_project(u, A, nl).v;
    double level = phi(v, A, nl);

    SolveReport rep;
    rep.method = SolveMethod::Nehari;
    rep.supercritical = is_supercritical(nl);

    std::vector<double> riesz_warm;
    int stagnant = 0, slow = 0, newton_failures = 0;
    int it = 0;
    for (; it < cfg.max_outer; ++it) {
        std::vector<double> grad = phi_grad(v, A, nl);
        std::vector<double> rg = cg_solve(A, grad, lin,
                                          riesz_warm.empty() ? nullptr : &riesz_warm);
        riesz_warm = rg;
        double gnorm = std::sqrt(std::max(0.0, dot(grad, rg)));

        if (gnorm <= cfg.grad_tol) break;

        // Newton endgame: at the switch threshold, or earlier once descent
        // drops become tiny relative to the level.
        if (gnorm < cfg.newton_switch || (slow >= 5 && newton_failures < 3)) {
            int nsteps = 0;
            bool nok = false;
            ScalarField refined = newton_refine(v, A, nl, cfg, lin, &nsteps, &nok);
            it += nsteps;
            if (nok) {
                v = refined;
                rep.method = SolveMethod::NewtonRefined;
                break;
            }
            ++newton_failures;
            slow = 0;
            std::vector<double> gref = phi_grad(refined, A, nl);
            if (norm2(gref) < norm2(grad)) {
                v = refined;
                level = phi(v, A, nl);
                continue;
            }
        }

        // Armijo backtracking with expansion along the negative Riesz
        // gradient, re-projected onto the manifold.  On the manifold the
        // projection does not change the first-order decrease rate.
        auto project_level = [&](double s, ScalarField& out) {
            ScalarField trial = v;
            axpy(-s, rg, trial.values);
            double b = power_mass(trial, nl);
            if (!(b > 0.0)) return std::numeric_limits<double>::infinity();
            out = nehari_project(trial, A, nl).v;
            return phi(out, A, nl);
        };
        double step = cfg.descent_step0;
        bool accepted = false;
        ScalarField candidate(grid);
        for (int bt = 0; bt < 40; ++bt, step *= 0.5) {
            double ltrial = project_level(step, candidate);
            if (ltrial <= level - cfg.armijo_c * step * gnorm * gnorm) {
                // expand while the level keeps improving
                ScalarField wider(grid);
                for (double s2 = 2.0 * step; s2 <= 64.0 * cfg.descent_step0; s2 *= 2.0) {
                    double l2 = project_level(s2, wider);
                    if (l2 < ltrial) {
                        ltrial = l2;
                        candidate = wider;
                    } else {
                        break;
                    }
                }
                double drop = level - ltrial;
                v = std::move(candidate);
                level = ltrial;
                accepted = true;
                stagnant = (drop < 1e-15) ? stagnant + 1 : 0;
                slow = (drop < 1e-12 * std::max(1.0, std::abs(level))) ? slow + 1 : 0;
                break;
            }
        }
        if (!accepted) {
            ++stagnant;
            ++slow;
        }
        if (stagnant >= 100)
            throw SolverError("nehari_minimize: descent stagnation after " +
                              std::to_string(it + 1) + " outer iterations, grad norm " +
                              std::to_string(gnorm));
    }
    if (it >= cfg.max_outer)
        throw SolverError("nehari_minimize: max_outer reached without convergence");

    std::vector<double> grad = phi_grad(v, A, nl);
    ScalarField riesz = riesz_gradient(grad, grid, A, lin);
    rep.u_star = v;
    rep.level = phi(v, A, nl);
    rep.grad_norm = dual_grad_norm(grad, riesz);
    rep.iterations = it;
    rep.seconds = seconds_since(t0);
    if (rep.grad_norm > cfg.grad_tol)
        throw SolverError("nehari_minimize: final grad norm " +
                          std::to_string(rep.grad_norm) + " above tolerance");
    return rep;
}

namespace {

std::vector<double> path_arclengths(const std::vector<ScalarField>& path,
                                    const SparseOperator& A) {
    const int m = static_cast<int>(path.size());
    std::vector<double> cum(m, 0.0);
    ScalarField diff = path[0];
    for (int t = 1; t < m; ++t) {
        diff.values = path[t].values;
        axpy(-1.0, path[t - 1].values, diff.values);
        cum[t] = cum[t - 1] + norm_energy(diff, A);
    }
    return cum;
}

// Piecewise-linear re-equidistribution of the path in the energy norm.
void reequidistribute(std::vector<ScalarField>& path, const SparseOperator& A) {
    const int m = static_cast<int>(path.size());
    std::vector<double> cum = path_arclengths(path, A);
    double total = cum[m - 1];
    if (!(total > 0.0)) return;

    std::vector<ScalarField> fresh = path;
    int seg = 0;
    for (int t = 1; t < m - 1; ++t) {
        double target = total * t / (m - 1);
        while (seg + 1 < m - 1 && cum[seg + 1] < target) ++seg;
        double span = cum[seg + 1] - cum[seg];
        double w = span > 0.0 ? (target - cum[seg]) / span : 0.0;
        fresh[t].values = path[seg].values;
        scale(fresh[t].values, 1.0 - w);
        axpy(w, path[seg + 1].values, fresh[t].values);
    }
    path = std::move(fresh);
}

} // namespace

SolveReport mpa_solve(const SparseOperator& A, const Nonlinearity& nl,
                      const Grid& grid, const ScalarField& u1, const MpaCfg& cfg,
                      const LinearSolverCfg& lin) {
    cfg.validate();
    auto t0 = clock_type::now();
    if (max_abs(u1.values) == 0.0)
        throw ConfigError("mpa_solve: endpoint u1 must be nonzero");
    double phi_u1 = phi(u1, A, nl);
    if (phi_u1 >= 0.0)
        throw ConfigError("mpa_solve: invalid endpoint, Phi(u1) = " +
                          std::to_string(phi_u1) + " >= 0");

    const int m = cfg.path_points;
    std::vector<ScalarField> path(m, ScalarField(grid));
    for (int t = 0; t < m; ++t) {
        path[t].values = u1.values;
        scale(path[t].values, static_cast<double>(t) / (m - 1));
    }

    SolveReport rep;
    rep.method = SolveMethod::Mpa;
    rep.supercritical = is_supercritical(nl);

    // Locate the path maximum, relax that node along its negative Riesz
    // gradient, re-equidistribute, repeat.  The nodal peak stagnates once the
    // true path maximum falls between nodes, at a gradient level set by the
    // node spacing; then either Newton finishes from the peak or the path is
    // contracted to the bracket around it, which shrinks the spacing
    // geometrically until Newton can take over.
    std::vector<double> warm;
    double prev_peak_level = std::numeric_limits<double>::infinity();
    int stall = 0;

    // Peak over interior nodes; ties break to the lowest index.  An endpoint
    // strictly above every interior node means the geometry is gone.
    auto peak_of = [&](int& peak) {
        peak = 1;
        double best = -std::numeric_limits<double>::infinity();
        for (int t = 1; t < m - 1; ++t) {
            double val = phi(path[t], A, nl);
            if (val > best) { best = val; peak = t; }
        }
        double e0 = phi(path[0], A, nl), e1 = phi(path[m - 1], A, nl);
        if (std::max(e0, e1) > best + 1e-12 * std::max(1.0, std::abs(best)))
            throw SolverError("mpa_solve: path maximum at an endpoint; "
                              "mountain-pass geometry lost");
        return best;
    };

    auto contract_to_bracket = [&](int peak) {
        std::vector<ScalarField> sub = {path[peak - 1], path[peak], path[peak + 1]};
        std::vector<ScalarField> fresh(m, ScalarField(grid));
        // equal arc positions along the two-segment polyline
        ScalarField d1 = sub[1], d2 = sub[2];
        axpy(-1.0, sub[0].values, d1.values);
        axpy(-1.0, sub[1].values, d2.values);
        double l1 = norm_energy(d1, A), l2 = norm_energy(d2, A);
        double total = l1 + l2;
        for (int t = 0; t < m; ++t) {
            double s = total * t / (m - 1);
            int seg = (s <= l1 || l2 == 0.0) ? 0 : 1;
            double w = seg == 0 ? (l1 > 0 ? s / l1 : 0.0) : (s - l1) / l2;
            w = std::clamp(w, 0.0, 1.0);
            fresh[t].values = sub[seg].values;
            scale(fresh[t].values, 1.0 - w);
            axpy(w, sub[seg + 1].values, fresh[t].values);
        }
        path = std::move(fresh);
    };

    int it = 0;
    double gnorm = 0.0;
    ScalarField result(grid);
    bool done = false;
    for (; it < cfg.max_outer && !done; ++it) {
        int peak = 0;
        double peak_level = peak_of(peak);

        std::vector<double> grad = phi_grad(path[peak], A, nl);
        std::vector<double> rg = cg_solve(A, grad, lin,
                                          warm.empty() ? nullptr : &warm);
        warm = rg;
        gnorm = std::sqrt(std::max(0.0, dot(grad, rg)));
        if (gnorm <= cfg.grad_tol) {
            result = path[peak];
            done = true;
            break;
        }

        stall = (peak_level > prev_peak_level -
                                  1e-9 * std::max(1.0, std::abs(peak_level)))
                    ? stall + 1 : 0;
        prev_peak_level = peak_level;

        if (gnorm < cfg.newton_switch || stall >= 5) {
            int nsteps = 0;
            bool nok = false;
            ScalarField refined = newton_refine(path[peak], A, nl, cfg, lin,
                                                &nsteps, &nok);
            it += nsteps;
            double lref = nok ? phi(refined, A, nl) : 0.0;
            // Accept only a nontrivial critical point above both valleys.
            if (nok && lref > 1e-12 && max_abs(refined.values) > 1e-12) {
                result = refined;
                rep.method = SolveMethod::NewtonRefined;
                done = true;
                break;
            }
            if (stall >= 5) {
                contract_to_bracket(peak);
                stall = 0;
                prev_peak_level = std::numeric_limits<double>::infinity();
                continue;
            }
        }

        // Armijo on the peak node.  The move is capped at half the node
        // spacing (the Riesz step has |s*rg|_A = s*gnorm) so the deformation
        // stays local and re-equidistribution keeps resolving the ridge.
        double spacing = path_arclengths(path, A)[m - 1] / (m - 1);
        double step = std::min(cfg.descent_step0, 0.5 * spacing / gnorm);
        for (int bt = 0; bt < 40; ++bt, step *= 0.5) {
            ScalarField trial = path[peak];
            axpy(-step, rg, trial.values);
            double ltrial = phi(trial, A, nl);
            if (ltrial <= peak_level - cfg.armijo_c * step * gnorm * gnorm) {
                path[peak] = std::move(trial);
                break;
            }
        }
        reequidistribute(path, A);
    }
    if (!done)
        throw SolverError("mpa_solve: max_outer reached, grad norm " +
                          std::to_string(gnorm));

    std::vector<double> grad = phi_grad(result, A, nl);
    ScalarField riesz = riesz_gradient(grad, grid, A, lin);
    rep.u_star = result;
    rep.level = phi(rep.u_star, A, nl);
    rep.grad_norm = dual_grad_norm(grad, riesz);
    rep.iterations = it;
    rep.seconds = seconds_since(t0);
    if (rep.grad_norm > cfg.grad_tol)
        throw SolverError("mpa_solve: final grad norm " +
                          std::to_string(rep.grad_norm) + " above tolerance");
    return rep;
}

} // namespace grushin
