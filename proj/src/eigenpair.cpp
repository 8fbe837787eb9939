#include "grushin/eigenpair.hpp"

#include <cmath>
#include <string>

#include "grushin/errors.hpp"
#include "grushin/vecops.hpp"

namespace grushin {

EigenResult smallest_eigenvalue(const SparseOperator& A, const Grid& grid,
                                const LinearSolverCfg& cfg) {
    const int n = A.size();
    if (n != grid.count())
        throw std::invalid_argument("smallest_eigenvalue: grid/operator mismatch");
    const std::vector<double>& m = grid.quad_w;

    LinearSolverCfg inner = cfg;
    inner.tol = std::min(cfg.tol, 1e-12);

    // All-ones start overlaps the (positive) ground mode.
    std::vector<double> v(n, 1.0);
    auto m_normalize = [&](std::vector<double>& w) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += m[i] * w[i] * w[i];
        s = std::sqrt(s);
        for (double& x : w) x /= s;
        return s;
    };
    m_normalize(v);

    // Stop on the pencil residual (what the caller relies on); Rayleigh
    // quotient stagnation alone can leave the eigenvector an order behind.
    auto pencil_residual = [&](const std::vector<double>& w, double lam,
                               std::vector<double>& Aw) {
        A.multiply(w, Aw);
        double rnum = 0.0, rden = 0.0;
        for (int i = 0; i < n; ++i) {
            double d = Aw[i] - lam * m[i] * w[i];
            rnum += d * d;
            rden += Aw[i] * Aw[i];
        }
        return std::sqrt(rnum / std::max(rden, 1e-300));
    };

    double lambda = 0.0;
    int it = 0;
    const int cap = std::max(200, cfg.iter_cap(n) / 10);
    std::vector<double> rhs(n), Av(n);
    std::vector<double> warm;
    for (; it < cap; ++it) {
        for (int i = 0; i < n; ++i) rhs[i] = m[i] * v[i];
        std::vector<double> w = cg_solve(A, rhs, inner, warm.empty() ? nullptr : &warm);
        warm = w;
        m_normalize(w);
        A.multiply(w, Av);
        double lambda_new = dot(w, Av); // M-normalized, so <Mw,w> = 1
        double change = std::abs(lambda_new - lambda) / std::max(std::abs(lambda_new), 1e-300);
        double resid = pencil_residual(w, lambda_new, Av);
        v = std::move(w);
        lambda = lambda_new;
        if (it > 0 && change <= 1e-12 && resid <= 1e-9) { ++it; break; }
    }
    if (it >= cap)
        throw SolverError("smallest_eigenvalue: iteration cap " + std::to_string(cap) +
                          " exceeded");

    // Fix the sign so the first eigenfunction reports positive.
    double mean = 0.0;
    for (int i = 0; i < n; ++i) mean += m[i] * v[i];
    if (mean < 0.0) scale(v, -1.0);

    A.multiply(v, Av);
    double rnum = 0.0, rden = 0.0;
    for (int i = 0; i < n; ++i) {
        double d = Av[i] - lambda * m[i] * v[i];
        rnum += d * d;
        rden += Av[i] * Av[i];
    }

    EigenResult res;
    res.lambda_min = lambda;
    res.eigvec = ScalarField(grid, v);
    res.iterations = it;
    res.residual = std::sqrt(rnum / std::max(rden, 1e-300));
    if (res.residual > 1e-8)
        throw SolverError("smallest_eigenvalue: residual " +
                          std::to_string(res.residual) + " above 1e-8");
    return res;
}

} // namespace grushin
