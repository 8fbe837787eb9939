#pragma once

#include <cstdint>
#include <string>

#include "grushin/functional.hpp"
#include "grushin/grid.hpp"
#include "grushin/linsolve.hpp"
#include "grushin/nonlinearity.hpp"
#include "grushin/sparse.hpp"

namespace grushin {

struct MpaCfg {
    int path_points = 41;
    double descent_step0 = 1.0;
    double armijo_c = 1e-4;
    double grad_tol = 1e-8;     // dual norm in the energy metric
    int max_outer = 10000;
    double newton_switch = 1e-4;

    void validate() const;
};

enum class SolveMethod { Nehari, Mpa, NewtonRefined };

const char* to_string(SolveMethod m);

struct SolveReport {
    ScalarField u_star;
    double level = 0;       // Phi(u_star)
    double grad_norm = 0;
    int iterations = 0;
    SolveMethod method = SolveMethod::Nehari;
    bool supercritical = false;
    double pohozaev_residual = 0;
    bool has_pohozaev = false;
    double seconds = 0;
};

// Scaling of u onto the Nehari manifold { v != 0 : <Phi'(v), v> = 0 } for the
// pure-power model: t* = (a/b)^{1/(p-1)} with a = <Au,u>, b = int |x|^{2k}|u|^{p+1}.
struct NehariProjection {
    double t_star = 0;
    ScalarField v;
};
NehariProjection nehari_project(const ScalarField& u, const SparseOperator& A,
                                const Nonlinearity& nl);

// Ground-state computation for the pure-power model: projected gradient
// descent on the Nehari manifold in the energy metric, then Newton polish.
// u_init, when given, overrides the seeded random positive start.
SolveReport nehari_minimize(const SparseOperator& A, const Nonlinearity& nl,
                            const Grid& grid, std::uint64_t seed, const MpaCfg& cfg,
                            const LinearSolverCfg& lin,
                            const ScalarField* u_init = nullptr);

// Mountain-pass path deformation: discretize a path from 0 to u1 (which must
// have Phi(u1) < 0), relax the path maximum along the negative Riesz
// gradient with Armijo backtracking, re-equidistribute in the energy norm,
// and switch to damped Newton near the critical point.
SolveReport mpa_solve(const SparseOperator& A, const Nonlinearity& nl,
                      const Grid& grid, const ScalarField& u1, const MpaCfg& cfg,
                      const LinearSolverCfg& lin);

// Damped Newton on Phi'(u) = 0 with the symmetric Jacobian
// A - diag(w_i df/dxi).  Returns the refined field; ok reports whether the
// dual gradient norm reached cfg.grad_tol.
ScalarField newton_refine(const ScalarField& u, const SparseOperator& A,
                          const Nonlinearity& nl, const MpaCfg& cfg,
                          const LinearSolverCfg& lin, int* steps = nullptr,
                          bool* ok = nullptr);

} // namespace grushin
