#pragma once

// Test-only dense re-implementations used as independent oracles.  These are
// written from the mathematical definitions over the full lattice (boundary
// zeros included) and deliberately share no code with the sparse path.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "grushin/grid.hpp"
#include "grushin/nonlinearity.hpp"

namespace oracle {

inline double weight_pow(double x, double e) {
    return x == 0.0 ? 0.0 : std::pow(std::abs(x), e);
}

// Full-lattice value of an interior-unknown vector.
inline Eigen::MatrixXd to_lattice(const grushin::Grid& g,
                                  const Eigen::VectorXd& u) {
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(g.nx, g.ny);
    for (int n = 0; n < g.count(); ++n)
        f(g.node_i[n], g.node_j[n]) = u[n];
    return f;
}

// Energy bilinear form on a rectangle grid by summing first differences over
// every lattice edge.
inline double dense_energy_form(const grushin::Grid& g, double k,
                                const Eigen::VectorXd& u,
                                const Eigen::VectorXd& v) {
    Eigen::MatrixXd U = to_lattice(g, u), V = to_lattice(g, v);
    double s = 0.0;
    for (int i = 0; i + 1 < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            s += (g.hy / g.hx) * (U(i + 1, j) - U(i, j)) * (V(i + 1, j) - V(i, j));
    for (int i = 0; i < g.nx; ++i) {
        double c = weight_pow(g.x_coord(i), 2.0 * k);
        for (int j = 0; j + 1 < g.ny; ++j)
            s += c * (g.hx / g.hy) * (U(i, j + 1) - U(i, j)) * (V(i, j + 1) - V(i, j));
    }
    return s;
}

inline Eigen::MatrixXd dense_grushin(const grushin::Grid& g, double k) {
    const int n = g.count();
    Eigen::MatrixXd A(n, n);
    for (int j = 0; j < n; ++j) {
        Eigen::VectorXd ej = Eigen::VectorXd::Zero(n);
        ej[j] = 1.0;
        for (int i = 0; i <= j; ++i) {
            Eigen::VectorXd ei = Eigen::VectorXd::Zero(n);
            ei[i] = 1.0;
            A(i, j) = A(j, i) = dense_energy_form(g, k, ei, ej);
        }
    }
    return A;
}

// Quadrature weights recomputed from scratch: interior cell widths, the two
// near-boundary nodes owning the extra half cell.
inline Eigen::VectorXd dense_weights(const grushin::Grid& g) {
    Eigen::VectorXd w(g.count());
    auto axis = [](int idx, int count, double h) {
        return (idx == 1 || idx == count - 2) ? 1.5 * h : h;
    };
    for (int n = 0; n < g.count(); ++n)
        w[n] = axis(g.node_i[n], g.nx, g.hx) * axis(g.node_j[n], g.ny, g.hy);
    return w;
}

inline double dense_phi(const grushin::Grid& g, double k,
                        const grushin::Nonlinearity& nl,
                        const Eigen::VectorXd& u) {
    double quad = 0.5 * dense_energy_form(g, k, u, u);
    Eigen::VectorXd w = dense_weights(g);
    double nonlin = 0.0;
    for (int n = 0; n < g.count(); ++n)
        nonlin += w[n] * nl.F(g.node_x[n], g.node_y[n], u[n]);
    return quad - nonlin;
}

struct DenseEigenResult {
    double lambda_min;
    Eigen::VectorXd eigvec;
};

// Smallest eigenvalue of A v = lambda diag(m) v via the symmetric reduction
// D^{-1/2} A D^{-1/2}.
inline DenseEigenResult dense_smallest_eigen(const Eigen::MatrixXd& A,
                                             const Eigen::VectorXd& m) {
    Eigen::VectorXd s = m.array().sqrt();
    Eigen::MatrixXd B = s.cwiseInverse().asDiagonal() * A *
                        s.cwiseInverse().asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (B + B.transpose()));
    DenseEigenResult r;
    r.lambda_min = es.eigenvalues()[0];
    r.eigvec = s.cwiseInverse().asDiagonal() * es.eigenvectors().col(0);
    return r;
}

} // namespace oracle
