#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "grushin/assemble.hpp"
#include "grushin/errors.hpp"
#include "grushin/grid.hpp"
#include "grushin/vecops.hpp"

using namespace grushin;

TEST_SUITE("assemble") {

TEST_CASE("diagonal entry carries the cell-volume-scaled stencil") {
    Grid g = build_grid(Domain::rectangle(-1, 1, -1, 1), 17, 17);
    SparseOperator A = assemble_grushin(g, 1.0);
    double h = g.hx;
    for (int n : {0, 17, 100}) {
        double x = g.node_x[n];
        double expect = h * h * (2.0 / (h * h) + 2.0 * x * x / (h * h));
        CHECK(A.diagonal(n) == doctest::Approx(expect).epsilon(1e-13));
    }
}

TEST_CASE("k <= 0 is rejected") {
    Grid g = build_grid(Domain::rectangle(-1, 1, -1, 1), 9, 9);
    CHECK_THROWS_AS(assemble_grushin(g, 0.0), ConfigError);
    CHECK_THROWS_AS(assemble_grushin(g, -1.0), ConfigError);
}

TEST_CASE("operator action converges to the differential operator, order 2") {
    // u = sin(pi(x+1)/2) sin(pi(y+1)/2) on (-1,1)^2;
    // -u_xx - |x|^{2k} u_yy has a closed form.
    for (double k : {1.0, 1.5}) {
        double err_prev = 0;
        std::vector<double> errs;
        for (int nx : {17, 33, 65}) {
            Grid g = build_grid(Domain::rectangle(-1, 1, -1, 1), nx, nx);
            SparseOperator A = assemble_grushin(g, k);
            ScalarField u(g);
            const double c = std::numbers::pi / 2;
            for (int n = 0; n < g.count(); ++n)
                u.values[n] = std::sin(c * (g.node_x[n] + 1)) *
                              std::sin(c * (g.node_y[n] + 1));
            std::vector<double> Au = A.multiply(u.values);
            double vol = g.hx * g.hy;
            double err = 0;
            for (int n = 0; n < g.count(); ++n) {
                double x = g.node_x[n];
                if (std::abs(x) < 0.15) continue; // away from the degeneracy line
                double exact = c * c * (1.0 + abs_pow(x, 2 * k)) * u.values[n];
                err = std::max(err, std::abs(Au[n] / vol - exact));
            }
            errs.push_back(err);
            err_prev = err;
        }
        (void)err_prev;
        // halving h divides the error by ~4
        CHECK(errs[0] / errs[1] > 3.0);
        CHECK(errs[1] / errs[2] > 3.0);
    }
}

TEST_CASE("symmetry via 20 random field pairs") {
    for (const Domain& d : {Domain::rectangle(-1, 1, -1, 1),
                            Domain::ellipse(0, 0, 1.2, 0.9)}) {
        Grid g = build_grid(d, 21, 19);
        SparseOperator A = assemble_grushin(g, 1.0);
        std::mt19937_64 rng(11);
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<double> u(g.count()), v(g.count());
            for (double& x : u) x = 2 * uniform01(rng) - 1;
            for (double& x : v) x = 2 * uniform01(rng) - 1;
            double a = A.inner(u, v), b = A.inner(v, u);
            CHECK(std::abs(a - b) <= 1e-12 * std::max(std::abs(a), 1.0));
        }
        CHECK(A.symmetry_error() < 1e-13);
    }
}

TEST_CASE("positive definiteness on random fields") {
    Grid g = build_grid(Domain::ellipse(0, 0, 1, 1), 17, 17);
    SparseOperator A = assemble_grushin(g, 2.0);
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> u(g.count());
        for (double& x : u) x = 2 * uniform01(rng) - 1;
        CHECK(A.inner(u, u) > 0.0);
    }
}

TEST_CASE("x = 0 line is degenerate but harmless") {
    // odd nx puts nodes exactly on x=0; the y-coupling vanishes there
    Grid g = build_grid(Domain::rectangle(-1, 1, -1, 1), 9, 9);
    SparseOperator A = assemble_grushin(g, 1.0);
    int n0 = g.index(4, 4); // x = 0 node
    REQUIRE(n0 >= 0);
    CHECK(g.node_x[n0] == 0.0);
    double h = g.hx;
    CHECK(A.diagonal(n0) == doctest::Approx(h * h * 2.0 / (h * h)));
    std::vector<double> u(g.count(), 1.0);
    CHECK(A.inner(u, u) > 0.0);
}

} // TEST_SUITE
