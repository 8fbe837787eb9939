#pragma once

#include "grushin/grid.hpp"
#include "grushin/sparse.hpp"

namespace grushin {

// Stiffness matrix of the Grushin form a(u,v) = \int u_x v_x + |x|^{2k} u_y v_y
// with homogeneous Dirichlet data, assembled edge by edge from first
// differences (so <Au,u> is the discrete energy directly).  On uniform arms
// the action reduces to hx*hy times the 5-point stencil
// -d2x u - |x|^{2k} d2y u.  Curved boundaries get Shortley-Weller shortened
// arms; the edge form keeps the matrix symmetric positive definite.
SparseOperator assemble_grushin(const Grid& grid, double k);

} // namespace grushin
