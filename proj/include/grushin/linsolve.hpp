#pragma once

#include <span>
#include <vector>

#include "grushin/sparse.hpp"

namespace grushin {

struct LinearSolverCfg {
    double tol = 1e-10; // relative residual
    int max_iter = 0;   // 0 means 10*N

    int iter_cap(int n) const { return max_iter > 0 ? max_iter : 10 * n; }
};

// Jacobi-preconditioned conjugate gradients for symmetric positive definite
// systems.  Throws SolverError on non-convergence (message carries the final
// relative residual).  x0, when given, is the warm start.
std::vector<double> cg_solve(const SparseOperator& A, std::span<const double> b,
                             const LinearSolverCfg& cfg,
                             const std::vector<double>* x0 = nullptr);

// MINRES for symmetric (possibly indefinite) systems; used by the Newton
// refinement where the linearized operator has a negative direction at
// mountain-pass points.  Returns false on breakdown/cap instead of throwing
// so callers can fall back to descent.
bool minres_solve(const SparseOperator& A, std::span<const double> b,
                  double tol, int max_iter, std::vector<double>& x);

} // namespace grushin
