#include <doctest.h>

#include <random>

#include "polymatch/oracle.hpp"
#include "support.hpp"

using namespace polymatch;

TEST_CASE("exact overlap of fixtures") {
    const SimplePolygon l(testkit::l_shape());
    CHECK(exact_overlap_general(l, l, {0, 0}) == doctest::Approx(3.0));
    CHECK(exact_overlap_general(l, l, {10, 0}) == 0.0);
    const SimplePolygon sq(testkit::unit_square());
    CHECK(exact_overlap_general(sq, sq, {0.5, 0.5}) == doctest::Approx(0.25));
}

TEST_CASE("exact overlap matches the fan-triangle oracle and is symmetric") {
    std::mt19937_64 rng(77);
    const auto fx = testkit::fixtures();
    for (const auto& a : fx) {
        for (const auto& b : fx) {
            const SimplePolygon p(a.ring);
            const SimplePolygon q(b.ring);
            std::uniform_real_distribution<double> u(-4.0, 4.0);
            for (int i = 0; i < 20; ++i) {
                const Point t{u(rng), u(rng)};
                const double v = exact_overlap_general(p, q, t);
                CHECK(v == doctest::Approx(testkit::fan_overlap(a.ring, b.ring, t)).epsilon(1e-9).scale(1.0));
                CHECK(std::abs(v - exact_overlap_general(q, p, -t)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("grid maximum of unit squares") {
    const SimplePolygon sq(testkit::unit_square());
    OracleOptions opt;
    opt.base_grid = 201;
    const auto r = grid_max_overlap(sq, sq, opt);
    CHECK(r.best_value >= 1.0 - 4.0 * r.grid_pitch);
    CHECK(r.best_value <= 1.0 + 1e-9);
    CHECK(r.refinement_levels == 3);
    CHECK(r.value_slack_bound == doctest::Approx(8.0 * r.grid_pitch));
}

TEST_CASE("grid maximum of crossed rectangles and the L fixture") {
    const SimplePolygon h({{0, 0}, {10, 0}, {10, 1}, {0, 1}});
    const SimplePolygon v({{0, 0}, {1, 0}, {1, 10}, {0, 10}});
    const auto r = grid_max_overlap(h, v);
    CHECK(r.best_value >= 1.0 - r.value_slack_bound);
    CHECK(r.best_value <= 1.0 + 1e-9);
    const SimplePolygon l(testkit::l_shape());
    const auto s = grid_max_overlap(l, l);
    CHECK(s.best_value >= 3.0 - s.value_slack_bound);
    CHECK(s.best_value <= 3.0 + 1e-9);
}

TEST_CASE("refinement never loses value and stays below the area bound") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 5; ++i) {
        const SimplePolygon p(testkit::random_convex(rng, 10).vertices());
        const SimplePolygon q(testkit::random_convex(rng, 10).vertices());
        double prev = 0.0;
        for (int levels = 0; levels <= 3; ++levels) {
            OracleOptions opt;
            opt.base_grid = 61;
            opt.refinement_levels = levels;
            const auto r = grid_max_overlap(p, q, opt);
            CHECK(r.best_value >= prev);
            CHECK(r.best_value <= std::min(area(p), area(q)) + 1e-9);
            prev = r.best_value;
        }
    }
}

TEST_CASE("parallel and serial evaluation agree") {
    const SimplePolygon p(testkit::plus_sign());
    const SimplePolygon q(testkit::u_shape());
    OracleOptions a;
    a.base_grid = 51;
    OracleOptions b = a;
    b.parallel = false;
    const auto ra = grid_max_overlap(p, q, a);
    const auto rb = grid_max_overlap(p, q, b);
    CHECK(ra.best_value == rb.best_value);
    CHECK(ra.best_translation == rb.best_translation);
}
