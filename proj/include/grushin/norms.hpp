#pragma once

#include <span>

#include "grushin/grid.hpp"
#include "grushin/sparse.hpp"

namespace grushin {

// \int_Omega |x|^{2k} g dx dy by the grid's nodal quadrature.
double weighted_integral(const Grid& grid, double k, std::span<const double> g);

// Weighted Lebesgue norm ( \int |x|^{2k} |u|^p )^{1/p}, p >= 1.
double norm_Lpk(const ScalarField& u, double p, double k);

// L^2 norm without the degenerate weight (plain nodal quadrature).
double norm_L2(const ScalarField& u);

// Energy seminorm sqrt(<Au,u>) = ( \int |grad_Gk u|^2 )^{1/2}.
double norm_energy(const ScalarField& u, const SparseOperator& A);

// Full Sobolev norm ( ||u||_L2^2 + ||grad_Gk u||_L2^2 )^{1/2}.
double norm_S12(const ScalarField& u, const SparseOperator& A);

// Exponents 1/q = mu/1 + (1-mu)/two_k of the Lebesgue interpolation
// inequality ||u||_q <= ||u||_1^mu ||u||_{two_k}^{1-mu}.
double holder_interp_mu(double q, double two_k);

} // namespace grushin
