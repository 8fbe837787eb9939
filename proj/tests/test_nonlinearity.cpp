#include "doctest.h"

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "grushin/errors.hpp"
#include "grushin/nonlinearity.hpp"
#include "grushin/vecops.hpp"

using namespace grushin;

namespace {

// Adaptive trapezoid with interval bisection until the Richardson estimate
// drops below tol.
double adaptive_trapezoid(const std::function<double(double)>& f, double a,
                          double b, double tol, int depth = 0) {
    double m = 0.5 * (a + b);
    double coarse = 0.5 * (b - a) * (f(a) + f(b));
    double fine = 0.25 * (b - a) * (f(a) + 2 * f(m) + f(b));
    if (depth > 40 || std::abs(fine - coarse) <= 3.0 * tol)
        return fine + (fine - coarse) / 3.0;
    return adaptive_trapezoid(f, a, m, 0.5 * tol, depth + 1) +
           adaptive_trapezoid(f, m, b, 0.5 * tol, depth + 1);
}

} // namespace

TEST_SUITE("nonlinearity") {

TEST_CASE("pure power point values") {
    Nonlinearity nl = Nonlinearity::pure_power(3.0, 1.0);
    CHECK(nl.f(0.5, 0.0, 2.0) == doctest::Approx(2.0));   // 0.25 * 8
    CHECK(nl.F(0.5, 0.0, 2.0) == doctest::Approx(1.0));   // 0.25 * 16/4
    CHECK(nl.F(0.7, -0.3, 0.0) == 0.0);
    CHECK(nl.f(0.0, 0.2, 5.0) == 0.0); // degenerate line
    SUBCASE("sign structure") {
        CHECK(nl.f(0.5, 0, -2.0) == doctest::Approx(-2.0));
        CHECK(nl.F(0.5, 0, -2.0) == doctest::Approx(1.0)); // even primitive
    }
}

TEST_CASE("guards") {
    CHECK_THROWS_AS(Nonlinearity::pure_power(0.5, 1.0), ConfigError);
    CHECK_THROWS_AS(Nonlinearity::pure_power(3.0, 0.0), ConfigError);
    CHECK_THROWS_AS(Nonlinearity::preset("nope", 1.0), ConfigError);
}

TEST_CASE("F equals the numeric integral of f") {
    std::mt19937_64 rng(42);
    std::vector<Nonlinearity> instances = {
        Nonlinearity::pure_power(3.0, 1.0),
        Nonlinearity::pure_power(1.5, 0.5),
        Nonlinearity::preset("linear", 1.0),
    };
    for (const auto& nl : instances) {
        for (int rep = 0; rep < 50; ++rep) {
            double x = 2.0 * uniform01(rng) - 1.0;
            double y = 2.0 * uniform01(rng) - 1.0;
            double xi = 6.0 * (uniform01(rng) - 0.5);
            double direct = nl.F(x, y, xi);
            double quad = adaptive_trapezoid(
                [&](double t) { return nl.f(x, y, t); }, 0.0, xi, 1e-9);
            CHECK(direct == doctest::Approx(quad).epsilon(1e-7).scale(1.0));
        }
    }
}

TEST_CASE("odd f, even F for pure powers") {
    Nonlinearity nl = Nonlinearity::pure_power(2.5, 1.5);
    std::mt19937_64 rng(1);
    for (int rep = 0; rep < 30; ++rep) {
        double x = 2.0 * uniform01(rng) - 1.0;
        double xi = 10.0 * (uniform01(rng) - 0.5);
        CHECK(nl.f(x, 0, -xi) == -nl.f(x, 0, xi));
        CHECK(nl.F(x, 0, -xi) == nl.F(x, 0, xi));
    }
}

TEST_CASE("hypothesis report for the model p=3, k=1") {
    Nonlinearity nl = Nonlinearity::pure_power(3.0, 1.0);
    CHECK(nl.hyp.q1 == 4.0);
    Domain sq = Domain::rectangle(-1, 1, -1, 1);
    HypothesisReport rep = check_A1_A5(nl, sq, 1000, 99);
    CHECK(rep.all_pass());
    CHECK(rep.find("A1") != nullptr);
    CHECK(rep.find("A1")->pass);
    CHECK(rep.find("A4-limit0")->pass);
    CHECK(rep.find("A5")->pass);
    CHECK(rep.seed == 99);
    CHECK_THROWS_AS(check_A1_A5(nl, sq, 10, 99), ConfigError);
}

TEST_CASE("A1 with a declared too-small growth exponent derives C0") {
    // p=1.5 against q1=2.1: |xi|^{1.5} outgrows |xi|^{1.1}, so a finite C0
    // only exists per sample range; the validator derives and reports it.
    Nonlinearity nl = Nonlinearity::pure_power(1.5, 1.0);
    nl.hyp.q1 = 2.1;
    nl.hyp.C0 = std::numeric_limits<double>::quiet_NaN(); // derive
    Domain sq = Domain::rectangle(-1, 1, -1, 1);
    HypothesisReport rep = check_A1_A5(nl, sq, 1000, 5);
    const HypothesisCheck* a1 = rep.find("A1");
    REQUIRE(a1 != nullptr);
    CHECK(a1->pass);
    CHECK(a1->detail.find("C0 derived") != std::string::npos);

    SUBCASE("declared C0 too small fails with a witness") {
        nl.hyp.C0 = 1.0;
        HypothesisReport rep2 = check_A1_A5(nl, sq, 1000, 5);
        const HypothesisCheck* a1b = rep2.find("A1");
        REQUIRE(a1b != nullptr);
        CHECK(!a1b->pass);
        CHECK(a1b->detail.find("witness") != std::string::npos);
    }
}

TEST_CASE("linear preset fails the small-xi limit with ratio 1") {
    Nonlinearity nl = Nonlinearity::preset("linear", 1.0);
    Domain sq = Domain::rectangle(-1, 1, -1, 1);
    HypothesisReport rep = check_A1_A5(nl, sq, 1000, 7);
    const HypothesisCheck* c = rep.find("A4-limit0");
    REQUIRE(c != nullptr);
    CHECK(!c->pass);
    CHECK(c->detail.find("1.0") != std::string::npos);
    // and the superlinear-growth limit fails too
    CHECK(!rep.find("A4-limitinf")->pass);
}

TEST_CASE("lemma 4.5 monotonicity") {
    std::vector<double> grid;
    for (int m = 0; m <= 400; ++m) grid.push_back(-20.0 + 0.1 * m);

    SUBCASE("pure power p=3 passes") {
        Nonlinearity nl = Nonlinearity::pure_power(3.0, 1.0);
        CHECK(check_lemma45_monotone(nl, 0.5, 0.2, grid));
        // f xi - 2F = |x|^{2k} |xi|^4 (1 - 2/4), increasing on xi >= 0
        double g1 = nl.f(0.5, 0, 1.0) * 1.0 - 2 * nl.F(0.5, 0, 1.0);
        CHECK(g1 == doctest::Approx(0.25 * 0.5));
    }
    SUBCASE("pure power p=1 is the constant boundary case") {
        Nonlinearity nl = Nonlinearity::pure_power(1.0, 1.0);
        for (double xi : {0.5, 1.0, 2.0})
            CHECK(nl.f(0.5, 0, xi) * xi - 2 * nl.F(0.5, 0, xi) ==
                  doctest::Approx(0.0).epsilon(1e-15));
        CHECK(check_lemma45_monotone(nl, 0.5, 0.2, grid));
    }
    SUBCASE("mismatched pair fails") {
        Nonlinearity nl = Nonlinearity::preset("mismatched", 1.0);
        // f xi - 2F = -|x|^{2k} xi^2, decreasing on xi >= C
        CHECK(!check_lemma45_monotone(nl, 0.5, 0.2, grid));
    }
    SUBCASE("unsorted grid is rejected") {
        Nonlinearity nl = Nonlinearity::pure_power(3.0, 1.0);
        std::vector<double> bad = {1.0, 0.5, 2.0};
        CHECK_THROWS_AS(check_lemma45_monotone(nl, 0.5, 0.2, bad), ConfigError);
    }
}

} // TEST_SUITE
