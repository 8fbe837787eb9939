#include "doctest.h"

#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "grushin/domain.hpp"
#include "grushin/errors.hpp"

using namespace grushin;

TEST_SUITE("domain") {

TEST_CASE("signed_inside sign convention") {
    Domain disk = Domain::ellipse(0, 0, 1, 1);
    CHECK(disk.signed_inside(0, 0) == doctest::Approx(-1.0));
    CHECK(disk.signed_inside(1, 0) == doctest::Approx(0.0));
    CHECK(disk.signed_inside(2, 0) > 0.0);

    Domain rect = Domain::rectangle(-1, 1, -1, 1);
    CHECK(rect.signed_inside(2, 0) > 0.0);
    CHECK(rect.signed_inside(0.25, 0.5) < 0.0);
    CHECK(rect.signed_inside(1, 0) == doctest::Approx(0.0));
}

TEST_CASE("construction guards") {
    CHECK_THROWS_AS(Domain::rectangle(1, -1, 0, 1), ConfigError);
    CHECK_THROWS_AS(Domain::ellipse(0, 0, -1, 1), ConfigError);
    // must intersect {x=0}
    CHECK_THROWS_AS(Domain::rectangle(0.5, 1.5, -1, 1), ConfigError);
    CHECK_THROWS_AS(Domain::ellipse(5, 0, 1, 1), ConfigError);
}

TEST_CASE("boundary quadrature on the unit circle") {
    Domain disk = Domain::ellipse(0, 0, 1, 1);
    auto samples = boundary_quadrature(disk, 4096);
    double total = 0;
    for (const auto& s : samples) {
        total += s.weight;
        CHECK(s.weight > 0.0);
        CHECK(std::abs(s.nu_x * s.nu_x + s.nu_y * s.nu_y - 1.0) < 1e-12);
        // radial normal on a circle
        CHECK(std::abs(s.nu_x - s.x) < 1e-12);
        CHECK(std::abs(s.nu_y - s.y) < 1e-12);
    }
    CHECK(std::abs(total - 2 * std::numbers::pi) / (2 * std::numbers::pi) < 1e-6);
}

TEST_CASE("boundary point at parameter zero on the circle") {
    Domain disk = Domain::ellipse(0, 0, 1, 1);
    BoundarySample s = boundary_point(disk, 0.0);
    CHECK(s.x == doctest::Approx(1.0));
    CHECK(s.y == doctest::Approx(0.0));
    CHECK(s.nu_x == doctest::Approx(1.0));
    CHECK(s.nu_y == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("square boundary weights sum exactly to the perimeter") {
    Domain sq = Domain::rectangle(-1, 1, -1, 1);
    for (int n : {8, 12, 16, 40, 100, 4096}) {
        auto samples = boundary_quadrature(sq, n);
        CHECK(static_cast<int>(samples.size()) == n);
        double total = 0;
        for (const auto& s : samples) total += s.weight;
        if (n % 4 == 0) CHECK(total == 8.0); // exact, not approximate
    }
    CHECK_THROWS_AS(boundary_quadrature(sq, 7), ConfigError);
}

TEST_CASE("counterclockwise traversal") {
    // Signed area from the boundary samples must be positive (ccw) and close
    // to the domain area.
    for (const Domain& d : {Domain::rectangle(-1, 2, -0.5, 1),
                            Domain::ellipse(0.25, -0.5, 1.5, 0.75)}) {
        auto samples = boundary_quadrature(d, 2048);
        double area2 = 0;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            const auto& a = samples[i];
            const auto& b = samples[(i + 1) % samples.size()];
            area2 += a.x * b.y - b.x * a.y;
        }
        CHECK(area2 > 0.0);
    }
}

TEST_CASE("starshape on the unit disk, k=1") {
    Domain disk = Domain::ellipse(0, 0, 1, 1);
    auto samples = boundary_quadrature(disk, 4096);
    StarshapeResult r = starshape_check(disk, 1.0, samples);
    CHECK(r.is_starshaped);
    // min over the circle of x^2 + 2 y^2 is 1, attained at (+-1, 0)
    CHECK(r.min_value == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("starshape on the square, k=2") {
    Domain sq = Domain::rectangle(-1, 1, -1, 1);
    auto samples = boundary_quadrature(sq, 256);
    StarshapeResult r = starshape_check(sq, 2.0, samples);
    CHECK(r.is_starshaped);
}

TEST_CASE("domain not containing the origin is not starshaped") {
    Domain e = Domain::ellipse(0.9, 0, 1, 1); // intersects {x=0}, origin outside? no:
    // (0,0): ((0-.9)/1)^2 - 1 = -0.19 < 0, so origin inside.  Shift in y.
    Domain e2 = Domain::ellipse(0, 5, 1, 1);
    CHECK(!e2.contains_origin());
    auto samples = boundary_quadrature(e2, 256);
    StarshapeResult r = starshape_check(e2, 1.0, samples);
    CHECK(!r.is_starshaped);
    (void)e;
}

TEST_CASE("starshape is stable under quadrature refinement") {
    for (const Domain& d : {Domain::rectangle(-1, 1, -1, 1),
                            Domain::ellipse(0, 0, 2, 0.5)}) {
        for (double k : {0.5, 1.0, 2.0, 4.0}) {
            bool prev = false;
            for (int n : {64, 128, 256, 512, 1024}) {
                StarshapeResult r = starshape_check(d, k, boundary_quadrature(d, n));
                CHECK(r.is_starshaped);
                if (n > 64) CHECK(r.is_starshaped == prev);
                prev = r.is_starshaped;
            }
        }
    }
}

TEST_CASE("origin-centered ellipses are starshaped for every k") {
    for (double k : {0.5, 1.0, 2.0, 4.0}) {
        Domain e = Domain::ellipse(0, 0, 1.5, 0.7);
        StarshapeResult r = starshape_check(e, k, boundary_quadrature(e, 512));
        CHECK(r.is_starshaped);
        CHECK(r.min_value >= 0.0);
    }
}

TEST_CASE("ellipse perimeter against the circle closed form") {
    Domain disk = Domain::ellipse(0, 0, 2, 2);
    CHECK(disk.perimeter() == doctest::Approx(4 * std::numbers::pi).epsilon(1e-10));
}

TEST_CASE("domain json round trip") {
    Domain r = Domain::rectangle(-1, 2, -0.5, 1);
    Domain r2 = Domain::from_json(r.to_json());
    CHECK(r2.kind == DomainKind::Rectangle);
    CHECK(r2.xmax == r.xmax);
    Domain e = Domain::ellipse(0.25, -0.5, 1.5, 0.75);
    Domain e2 = Domain::from_json(e.to_json());
    CHECK(e2.kind == DomainKind::Ellipse);
    CHECK(e2.b == e.b);
}

} // TEST_SUITE
