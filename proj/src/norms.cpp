#include "grushin/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "grushin/errors.hpp"
#include "grushin/vecops.hpp"

namespace grushin {

double weighted_integral(const Grid& grid, double k, std::span<const double> g) {
    if (static_cast<int>(g.size()) != grid.count())
        throw std::invalid_argument("weighted_integral: dimension mismatch");
    KahanSum s;
    for (int n = 0; n < grid.count(); ++n)
        s.add(grid.quad_w[n] * abs_pow(grid.node_x[n], 2.0 * k) * g[n]);
    return s.value();
}

double norm_Lpk(const ScalarField& u, double p, double k) {
    if (!(p >= 1.0))
        throw ConfigError("norm_Lpk: need p >= 1");
    const Grid& g = *u.grid;
    KahanSum s;
    for (int n = 0; n < g.count(); ++n)
        s.add(g.quad_w[n] * abs_pow(g.node_x[n], 2.0 * k) *
              abs_pow(u.values[n], p));
    return std::pow(s.value(), 1.0 / p);
}

double norm_L2(const ScalarField& u) {
    const Grid& g = *u.grid;
    KahanSum s;
    for (int n = 0; n < g.count(); ++n)
        s.add(g.quad_w[n] * u.values[n] * u.values[n]);
    return std::sqrt(s.value());
}

double norm_energy(const ScalarField& u, const SparseOperator& A) {
    if (A.size() != static_cast<int>(u.values.size()))
        throw std::invalid_argument("norm_energy: dimension mismatch");
    return std::sqrt(std::max(0.0, A.inner(u.values, u.values)));
}

double norm_S12(const ScalarField& u, const SparseOperator& A) {
    double l2 = norm_L2(u);
    double en = norm_energy(u, A);
    return std::sqrt(l2 * l2 + en * en);
}

double holder_interp_mu(double q, double two_k) {
    return (two_k - q) / (two_k * q - q);
}

} // namespace grushin
