#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "grushin/domain.hpp"
#include "grushin/grid.hpp"
#include "grushin/linsolve.hpp"
#include "grushin/sparse.hpp"

namespace grushin {

struct MpaCfg; // solvers.hpp

// p_crit = (4+5k)/k separates existence from nonexistence on starshaped
// domains; two_k = (4+6k)/k = p_crit + 1 is the embedding exponent.
struct CriticalExponents {
    double p_crit = 0;
    double two_k = 0;
};
CriticalExponents critical_exponents(double k);

// Coefficient (2+3k)/(p+1) - k/2 multiplying the volume side of the
// identity; vanishes exactly at p = p_crit(k).
double pohozaev_coefficient(double k, double p);

struct PohozaevReport {
    double lhs = 0;            // coeff * int |x|^{2k} |u|^{p-1} u^2
    double rhs = 0;            // boundary flux integral
    double coeff = 0;
    double rel_residual = 0;   // |lhs-rhs| / max(|lhs|,|rhs|,tiny)
    double boundary_min_factor = 0; // min of x nu_x + (1+k) y nu_y
};

// Both sides of the identity for a (near-)solution of the pure-power
// problem.  The outward normal derivative is extracted by one-sided
// quadratic interpolation through two interior probe points.
PohozaevReport pohozaev_evaluate(const ScalarField& u, const Domain& domain,
                                 double k, double p,
                                 const std::vector<BoundarySample>& boundary);

struct TrendPoint {
    int nx = 0, ny = 0;
    double level = 0;
    double max_norm = 0;
    double grad_norm = 0;
};

struct TrendReport {
    std::vector<TrendPoint> points;
    std::string verdict;   // "consistent-with-nonexistence" | "inconclusive"
    bool supercritical = false;
};

// Refinement study of the ground-state level.  The verdict reads the trend:
// levels must keep falling and the max norm keep growing by more than the
// stabilization threshold (2% per refinement) across at least 3 grids,
// otherwise "inconclusive".  Requires a G_k-starshaped domain.
TrendReport nonexistence_trend(const Domain& domain, double k, double p,
                               const std::vector<std::pair<int, int>>& grids,
                               std::uint64_t seed, const MpaCfg& cfg,
                               const LinearSolverCfg& lin);

struct EmbeddingReport {
    double q = 0, k = 0;
    double C_q_estimate = 0;
    ScalarField maximizer;
    int iterations = 0;
};

// Sharp discrete constant of ||u||_{L^q_k} <= C_q ||u||_energy, by projected
// gradient ascent of the ratio on the energy sphere.  1 <= q <= two_k.
EmbeddingReport embedding_constant(const SparseOperator& A, const Grid& grid,
                                   double k, double q, std::uint64_t seed,
                                   int iters);

struct CompactnessReport {
    std::vector<double> energies;   // energy norm per input field
    std::vector<double> distances;  // L^q_k distance to the coarse space
    std::vector<int> subsequence;   // greedy indices with decreasing distance
};

// Desk-scale compactness diagnostic: distance of each field to a fixed
// coarse subspace (energy-orthogonal projection) measured in L^q_k.
// Only q < two_k is admitted.  With an empty field list, `count` random
// unit-energy fields are generated from the seed.
CompactnessReport compactness_probe(const SparseOperator& A, const Grid& grid,
                                    double k, double q,
                                    std::vector<ScalarField> fields,
                                    std::uint64_t seed, int count = 8);

} // namespace grushin
