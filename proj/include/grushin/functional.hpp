#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "grushin/grid.hpp"
#include "grushin/linsolve.hpp"
#include "grushin/nonlinearity.hpp"
#include "grushin/sparse.hpp"

namespace grushin {

// Energy functional Phi(u) = 1/2 <Au,u> - sum_i w_i F(x_i,y_i,u_i).
double phi(const ScalarField& u, const SparseOperator& A, const Nonlinearity& nl);

// Euclidean-dual gradient: entry i = (Au)_i - w_i f(x_i,y_i,u_i).
// <grad, v> is the directional derivative of phi at u along v.
std::vector<double> phi_grad(const ScalarField& u, const SparseOperator& A,
                             const Nonlinearity& nl);

// Riesz representative in the energy metric: solves A g = grad_dual.
ScalarField riesz_gradient(std::span<const double> grad_dual, const Grid& grid,
                           const SparseOperator& A, const LinearSolverCfg& lin);

// Dual norm of the gradient in the energy metric, sqrt(<grad, A^{-1} grad>).
double dual_grad_norm(std::span<const double> grad_dual, const ScalarField& riesz);

struct EnergyState {
    ScalarField u;
    double phi = 0;
    std::vector<double> grad_dual;
    ScalarField grad_riesz;
    double grad_norm = 0;
};

EnergyState make_energy_state(const ScalarField& u, const SparseOperator& A,
                              const Nonlinearity& nl, const LinearSolverCfg& lin);

// Mountain-pass geometry probes.
//
// Small side: over `directions` random unit-energy directions, find the
// radius rho maximizing the worst-case energy; alpha is that worst case.
struct SmallSideProbe {
    double rho = 0;
    double alpha = 0;
    bool success() const { return alpha > 0.0; }
};
SmallSideProbe probe_mountain_small_side(const Grid& grid, const SparseOperator& A,
                                         const Nonlinearity& nl, int directions,
                                         std::uint64_t seed);

// Far side: fixed positive unit-energy profile supported on |x| >= 0.1,
// radius doubled until the energy turns negative.  phis holds Phi at
// {R0, 2*R0, 4*R0}.
struct FarSideProbe {
    double R0 = 0;
    std::vector<double> phis;
    ScalarField u_hat;
};
FarSideProbe probe_mountain_far_side(const Grid& grid, const SparseOperator& A,
                                     const Nonlinearity& nl);

// The far-side probe's endpoint u1 = 2*R0*u_hat with Phi(u1) < 0, the
// starting endpoint for mountain-pass runs.
ScalarField make_mountain_endpoint(const Grid& grid, const SparseOperator& A,
                                   const Nonlinearity& nl);

} // namespace grushin
