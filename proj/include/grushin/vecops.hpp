#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace grushin {

// |x|^e with the conventions 0^e = 0 for e > 0 and x^0 = 1.  Routed through
// std::abs so negative bases with fractional exponents stay well defined.
inline double abs_pow(double x, double e) {
    if (e == 0.0) return 1.0;
    if (x == 0.0) return 0.0;
    return std::pow(std::abs(x), e);
}

// sign(x)*|x|^e, the odd power used by pure-power nonlinearities.
inline double signed_pow(double x, double e) {
    if (x == 0.0) return 0.0;
    double m = std::pow(std::abs(x), e);
    return x > 0.0 ? m : -m;
}

// Kahan-compensated accumulator.  The energy functional is differenced at
// step sizes down to 1e-6 in the gradient checks, so plain summation noise
// would sit right at the signal level.
class KahanSum {
public:
    void add(double term) {
        double y = term - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
    KahanSum s;
    for (std::size_t i = 0; i < a.size(); ++i) s.add(a[i] * b[i]);
    return s.value();
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline void scale(std::span<double> x, double alpha) {
    for (double& v : x) v *= alpha;
}

inline double max_abs(std::span<const double> a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

// Uniform double in [0,1) from the top 53 bits of a 64-bit generator.
// std::uniform_real_distribution is implementation-defined; this keeps
// reports reproducible byte for byte.
template <class Rng>
double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace grushin
