#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "polymatch/geom.hpp"
#include "support.hpp"

using namespace polymatch;
using testkit::Ring;

namespace {

ConvexPolygon hexagon() {
    std::vector<Point> v;
    for (int i = 0; i < 6; ++i) {
        const double a = std::numbers::pi / 3.0 * i;
        v.push_back({std::cos(a), std::sin(a)});
    }
    return ConvexPolygon(v);
}

}  // namespace

TEST_CASE("area of basic shapes") {
    CHECK(area(ConvexPolygon::box(0, 0, 1, 1)) == doctest::Approx(1.0));
    CHECK(area(ConvexPolygon({{0, 0}, {1, 0}, {0, 1}})) == doctest::Approx(0.5));
    CHECK(area(SimplePolygon(testkit::l_shape())) == doctest::Approx(3.0));
}

TEST_CASE("rings are canonicalized to ccw without repeats or collinear runs") {
    ConvexPolygon c({{0, 1}, {1, 1}, {1, 0.5}, {1, 0}, {0, 0}, {0, 0}});
    CHECK(c.size() == 4);
    CHECK(signed_area(c.vertices()) > 0.0);
    SimplePolygon s({{0, 2}, {1, 2}, {1, 1}, {2, 1}, {2, 0}, {0, 0}});
    CHECK(signed_area(s.ring()) == doctest::Approx(3.0));
}

TEST_CASE("invalid rings are rejected") {
    CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}, {2, 0}}), GeometryError);
    CHECK_THROWS_AS(ConvexPolygon(testkit::l_shape()), GeometryError);
    // bow tie
    CHECK_THROWS_AS(SimplePolygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), GeometryError);
    CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}, {NAN, 1}}), GeometryError);
}

TEST_CASE("parts must tile the ring") {
    const Ring l = testkit::l_shape();
    std::vector<ConvexPolygon> parts{ConvexPolygon::box(0, 0, 2, 1), ConvexPolygon::box(0, 1, 1, 2)};
    CHECK_NOTHROW(SimplePolygon(l, parts));
    std::vector<ConvexPolygon> short_parts{ConvexPolygon::box(0, 0, 2, 1)};
    CHECK_THROWS_AS(SimplePolygon(l, short_parts), GeometryError);
}

TEST_CASE("width and diameter") {
    auto sq = width_and_diameter(ConvexPolygon::box(0, 0, 1, 1));
    CHECK(sq.width == doctest::Approx(1.0));
    CHECK(sq.diameter == doctest::Approx(std::sqrt(2.0)));
    auto rect = width_and_diameter(ConvexPolygon::box(0, 0, 4, 1));
    CHECK(rect.width == doctest::Approx(1.0));
    CHECK(rect.diameter == doctest::Approx(std::sqrt(17.0)));
    auto hex = width_and_diameter(hexagon());
    CHECK(hex.width == doctest::Approx(std::sqrt(3.0)));
    CHECK(hex.diameter == doctest::Approx(2.0));
}

TEST_CASE("width agrees with brute force on random polygons") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const auto c = testkit::random_convex(rng, 3 + static_cast<int>(rng() % 40));
        CHECK(width_and_diameter(c).width == doctest::Approx(testkit::brute_width(c.vertices())).epsilon(1e-12));
    }
}

TEST_CASE("convex intersection") {
    const auto sq = ConvexPolygon::box(0, 0, 1, 1);
    auto a = convex_intersection(sq, sq.translated({0.5, 0.5}));
    REQUIRE(a);
    CHECK(area(*a) == doctest::Approx(0.25));
    CHECK_FALSE(convex_intersection(sq, sq.translated({2, 0})));
    auto b = convex_intersection(sq, ConvexPolygon({{0, 0}, {2, 0}, {0, 2}}));
    REQUIRE(b);
    CHECK(area(*b) == doctest::Approx(testkit::convex_overlap(sq.vertices(), {{0, 0}, {2, 0}, {0, 2}}, {})));
    CHECK(area(*b) == doctest::Approx(1.0));
}

TEST_CASE("overlap area matches the clipping oracle and is symmetric") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int i = 0; i < 300; ++i) {
        const auto x = testkit::random_convex(rng, 3 + static_cast<int>(rng() % 30));
        const auto y = testkit::random_convex(rng, 3 + static_cast<int>(rng() % 30));
        const Point t{u(rng), u(rng)};
        const double v = overlap_area(x, y, t);
        CHECK(v == doctest::Approx(testkit::convex_overlap(x.vertices(), y.vertices(), t)).epsilon(1e-12).scale(1.0));
        CHECK(std::abs(v - overlap_area(y, x, -t)) <= 1e-12);
    }
}

TEST_CASE("clip provenance identifies the lines through each vertex") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 100; ++i) {
        const auto x = testkit::random_convex(rng, 8);
        const auto y = testkit::random_convex(rng, 8);
        const auto c = clip_convex(x, y, {0.1, -0.05});
        for (std::size_t k = 0; k < c.vertices.size(); ++k) {
            for (const EdgeRef& e : {c.lines[k].first, c.lines[k].second}) {
                const auto& poly = e.source == Source::X ? x : y;
                const Point shift = e.source == Source::X ? Point{} : Point{0.1, -0.05};
                const Point a = poly.at(e.index) + shift;
                const Point b = poly.at(e.index + 1) + shift;
                CHECK(std::abs(orient(a, b, c.vertices[k])) / distance(a, b) < 1e-9);
            }
        }
    }
}

TEST_CASE("affine maps") {
    const auto sq = ConvexPolygon::box(0, 0, 1, 1);
    const auto id = apply_affine(AffineMap(), sq);
    CHECK(id.vertices() == sq.vertices());
    CHECK(area(apply_affine(AffineMap::scaling(2.0), sq)) == doctest::Approx(4.0));
    const AffineMap m({2.0, 1.0, 0.5, 3.0}, {1.0, -2.0});
    const AffineMap back = invert_affine(m).compose(m);
    const Point p{0.3, 0.7};
    CHECK(back.apply(p).x == doctest::Approx(p.x));
    CHECK(back.apply(p).y == doctest::Approx(p.y));
    CHECK_THROWS_AS(invert_affine(AffineMap({1.0, 2.0, 2.0, 4.0}, {})), GeometryError);
}

TEST_CASE("area ratios survive affine maps") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const AffineMap m({1.0 + u(rng), u(rng), u(rng), 1.0 + u(rng)}, {u(rng), u(rng)});
        if (std::abs(m.determinant()) < 1e-2) continue;
        const auto x = testkit::random_convex(rng, 12);
        const auto y = testkit::random_convex(rng, 12);
        const auto xy = convex_intersection(x, y);
        if (!xy) continue;
        const double before = area(*xy) / area(x);
        const auto mxy = convex_intersection(apply_affine(m, x), apply_affine(m, y));
        REQUIRE(mxy);
        CHECK(area(*mxy) / area(apply_affine(m, x)) == doctest::Approx(before).epsilon(1e-9));
    }
}

TEST_CASE("inscribed disk") {
    CHECK(inscribed_disk_radius(ConvexPolygon::box(0, 0, 1, 1)) == doctest::Approx(0.5));
    CHECK(inscribed_disk_radius(ConvexPolygon({{0, 0}, {1, 0}, {0, 1}})) ==
          doctest::Approx((2.0 - std::sqrt(2.0)) / 2.0));
}

TEST_CASE("inscribed radius is at least width / (2 sqrt 3)") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        const auto c = testkit::random_convex(rng, 3 + static_cast<int>(rng() % 30));
        const auto d = inscribed_disk(c);
        CHECK(d.radius >= testkit::brute_width(c.vertices()) / (2.0 * std::sqrt(3.0)) - 1e-9);
        CHECK(testkit::in_convex(c.vertices(), d.center, 1e-9));
    }
}

TEST_CASE("part areas add up to the ring area") {
    const Ring l = testkit::l_shape();
    SimplePolygon p(l, {ConvexPolygon::box(0, 0, 2, 1), ConvexPolygon::box(0, 1, 1, 2)});
    double sum = 0.0;
    for (const auto& part : *p.parts()) sum += area(part);
    CHECK(sum == doctest::Approx(area(p)).epsilon(1e-9));
}
