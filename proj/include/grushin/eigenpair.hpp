#pragma once

#include "grushin/grid.hpp"
#include "grushin/linsolve.hpp"
#include "grushin/sparse.hpp"

namespace grushin {

struct EigenResult {
    double lambda_min = 0;
    ScalarField eigvec;       // M-normalized, sign fixed to positive mean
    int iterations = 0;
    double residual = 0;      // ||A v - lambda M v|| / ||A v||
};

// Smallest eigenvalue of the pencil A v = lambda M v, where M is the
// diagonal quadrature mass matrix of the grid.  Inverse power iteration with
// Rayleigh-quotient stopping (relative change <= 1e-12).  lambda_min > 0 is
// the discrete Poincare constant underpinning the norm equivalence.
EigenResult smallest_eigenvalue(const SparseOperator& A, const Grid& grid,
                                const LinearSolverCfg& cfg);

} // namespace grushin
