#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "grushin/domain.hpp"

namespace grushin {

enum class NonlinKind { PurePower, Preset };

// Right-hand side f(x,y,xi) and primitive F(x,y,xi) = int_0^xi f.
//
// PurePower is the model family f = |x|^{2k} |xi|^{p-1} xi.  Presets are
// compiled-in named pairs used by the hypothesis validators:
//   "linear"     f = |x|^{2k} xi, F = |x|^{2k} xi^2 / 2   (violates the
//                small-xi limit: f/(|x|^{2k} xi) == 1)
//   "mismatched" f = |x|^{2k} xi, F = |x|^{2k} xi^2       (F is not the
//                primitive of f; exercises the monotonicity failure path)
struct Nonlinearity {
    NonlinKind kind = NonlinKind::PurePower;
    double k = 1.0;
    double p = 3.0;          // PurePower exponent
    std::string preset_name; // Preset

    // Hypothesis metadata: growth exponent q1, growth constant C0 (NaN means
    // "derive from samples"), small-argument threshold C.
    struct Hypotheses {
        double q1 = 0;
        double C0 = std::numeric_limits<double>::quiet_NaN();
        double C = 1.0;
    } hyp;

    double f(double x, double y, double xi) const;
    double F(double x, double y, double xi) const;
    double fprime(double x, double y, double xi) const; // d f / d xi

    bool is_pure_power() const { return kind == NonlinKind::PurePower; }

    static Nonlinearity pure_power(double p, double k);
    static Nonlinearity preset(const std::string& name, double k);
};

struct HypothesisCheck {
    std::string name;
    bool pass = false;
    std::string detail;      // derived constants or the failing witness
};

struct HypothesisReport {
    std::vector<HypothesisCheck> checks;
    std::uint64_t seed = 0;
    std::string caveats;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    const HypothesisCheck* find(const std::string& name) const;
};

// Statistical spot checks of the standing hypotheses on f: growth bound,
// small-argument bound, sign lower bound, the two limits at 0 and infinity,
// and monotonicity of f/xi.  Sampled, never a proof; the report records the
// seed and any derived constants.
HypothesisReport check_A1_A5(const Nonlinearity& nl, const Domain& domain,
                             int sample_count, std::uint64_t seed);

// xi -> f(x,y,xi) xi - 2 F(x,y,xi) must be nondecreasing on xi >= C and
// nonincreasing on xi <= -C.  xi_grid must be sorted ascending.
bool check_lemma45_monotone(const Nonlinearity& nl, double x, double y,
                            std::span<const double> xi_grid);

} // namespace grushin
