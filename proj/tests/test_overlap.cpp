#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "polymatch/approx.hpp"
#include "polymatch/overlap.hpp"
#include "support.hpp"

using namespace polymatch;
using testkit::Ring;

namespace {

const ConvexPolygon kSquare = ConvexPolygon::box(0, 0, 1, 1);

double ring_distance(const Ring& r, const Point& p) {
    double d = INFINITY;
    for (std::size_t i = 0; i < r.size(); ++i) d = std::min(d, testkit::seg_dist(p, r[i], r[(i + 1) % r.size()]));
    return d;
}

ConvexPolygon regular(int n, double radius, Point c = {}) {
    std::vector<Point> v;
    for (int i = 0; i < n; ++i) {
        const double a = 2.0 * std::numbers::pi * i / n;
        v.push_back({c.x + radius * std::cos(a), c.y + radius * std::sin(a)});
    }
    return ConvexPolygon(v);
}

/// Largest |psi(t) - overlap(t)| over n uniform t in the Minkowski box.
double worst_error(const PiecewiseQuadratic& psi, const ConvexPolygon& x, const ConvexPolygon& y, int n,
                   std::uint64_t seed) {
    const auto bx = bounding_box(x.vertices());
    const auto by = bounding_box(y.vertices());
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(bx.min_x - by.max_x, bx.max_x - by.min_x);
    std::uniform_real_distribution<double> uy(bx.min_y - by.max_y, bx.max_y - by.min_y);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const Point t{ux(rng), uy(rng)};
        worst = std::max(worst, std::abs(psi(t) - testkit::convex_overlap(x.vertices(), y.vertices(), t)));
    }
    return worst;
}

}  // namespace

TEST_CASE("overlap of unit squares") {
    CHECK(overlap_area(kSquare, kSquare, {0, 0}) == doctest::Approx(1.0));
    CHECK(overlap_area(kSquare, kSquare, {0.5, 0}) == doctest::Approx(0.5));
    CHECK(overlap_area(kSquare, kSquare, {0.25, 0.25}) == doctest::Approx(0.5625));
}

TEST_CASE("face quadratic of unit squares") {
    const auto q = face_quadratic(kSquare, kSquare, {0.5, 0.5});
    CHECK(q.a == doctest::Approx(0.0));
    CHECK(q.b == doctest::Approx(1.0));
    CHECK(q.c == doctest::Approx(0.0));
    CHECK(q.d == doctest::Approx(-1.0));
    CHECK(q.e == doctest::Approx(-1.0));
    CHECK(q.g == doctest::Approx(1.0));
    const auto r = face_quadratic(kSquare, kSquare, {0.5, -0.5});
    CHECK(r.a == doctest::Approx(0.0));
    CHECK(r.b == doctest::Approx(-1.0));
    CHECK(r.c == doctest::Approx(0.0));
    CHECK(r.d == doctest::Approx(-1.0));
    CHECK(r.e == doctest::Approx(1.0));
    CHECK(r.g == doctest::Approx(1.0));
}

TEST_CASE("face quadratic rejects boundary placements") {
    CHECK_THROWS_AS(face_quadratic(kSquare, kSquare, {0.0, 0.5}), DegenerateConfiguration);
    CHECK_THROWS_AS(face_quadratic(kSquare, kSquare, {0.0, 0.0}), DegenerateConfiguration);
}

TEST_CASE("face quadratic reproduces the overlap near the base point") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    std::normal_distribution<double> jitter(0.0, 1e-4);
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
        const auto x = testkit::random_convex(rng, 3 + static_cast<int>(rng() % 12));
        const auto y = testkit::random_convex(rng, 3 + static_cast<int>(rng() % 12));
        const Point t0{u(rng), u(rng)};
        Quadratic2 q;
        try {
            q = face_quadratic(x, y, t0);
        } catch (const DegenerateConfiguration&) {
            continue;
        }
        CHECK(std::abs(q(t0) - testkit::convex_overlap(x.vertices(), y.vertices(), t0)) <= 1e-9);
        // A tiny move rarely leaves the face; the quadratic's error then is
        // at most second order in the step, so compare loosely.
        const Point t1{t0.x + jitter(rng), t0.y + jitter(rng)};
        CHECK(std::abs(q(t1) - testkit::convex_overlap(x.vertices(), y.vertices(), t1)) <= 1e-6);
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("quadratic maximization over convex faces") {
    const auto box = ConvexPolygon::box(-1, -1, 1, 1);
    const auto m1 = maximize_quadratic_over_convex({-1, 0, -1, 0, 0, 0}, box);
    CHECK(m1.t.x == doctest::Approx(0.0));
    CHECK(m1.t.y == doctest::Approx(0.0));
    CHECK(m1.value == doctest::Approx(0.0));

    const auto m2 = maximize_quadratic_over_convex({0, 0, 0, 1, 0, 0}, kSquare);
    CHECK(m2.t.x == doctest::Approx(1.0));
    CHECK(m2.value == doctest::Approx(1.0));

    // (1 - tx)(1 - ty)
    const auto m3 = maximize_quadratic_over_convex({0, 1, 0, -1, -1, 1}, ConvexPolygon::box(0, 0, 0.5, 0.5));
    CHECK(m3.t.x == doctest::Approx(0.0));
    CHECK(m3.t.y == doctest::Approx(0.0));
    CHECK(m3.value == doctest::Approx(1.0));
}

TEST_CASE("quadratic maximization over a region with a hole") {
    const Ring outer{{-2, -2}, {2, -2}, {2, 2}, {-2, 2}};
    const std::vector<Ring> holes{{{-1, -1}, {-1, 1}, {1, 1}, {1, -1}}};
    const auto m = maximize_quadratic_over_region({-1, 0, -1, 0, 0, 0}, outer, holes);
    CHECK(m.value == doctest::Approx(-1.0));
    CHECK(std::max(std::abs(m.t.x), std::abs(m.t.y)) == doctest::Approx(1.0));
}

TEST_CASE("convex overlap maximum") {
    const auto m = maximize_convex_overlap(kSquare, kSquare);
    CHECK(m.value == doctest::Approx(1.0));
    const auto h = ConvexPolygon::box(0, 0, 10, 1);
    const auto v = ConvexPolygon::box(0, 0, 1, 10);
    CHECK(maximize_convex_overlap(h, v).value == doctest::Approx(1.0));
}

TEST_CASE("slice of unit squares") {
    const auto s = compute_slice(kSquare, kSquare, 0.25, {0, 0});
    const Ring& r = s.boundary.vertices();
    CHECK(ring_distance(r, {0.75, 0.0}) <= 1e-9);
    CHECK(ring_distance(r, {0.0, 0.75}) <= 1e-9);
    for (const auto& p : r) {
        CHECK((1.0 - std::abs(p.x)) * (1.0 - std::abs(p.y)) == doctest::Approx(0.25).epsilon(1e-9));
    }
    CHECK(testkit::is_convex_ccw(r, 1e-12));
}

TEST_CASE("slice just under the maximum is tiny") {
    const auto s = compute_slice(kSquare, kSquare, 1.0 - 1e-9, {0, 0});
    const auto bb = bounding_box(s.boundary.vertices());
    CHECK(bb.width() <= 1e-8);
    CHECK(bb.height() <= 1e-8);
}

TEST_CASE("slice preconditions") {
    CHECK_THROWS_AS(compute_slice(kSquare, kSquare, 0.0, {0, 0}), PreconditionError);
    CHECK_THROWS_AS(compute_slice(kSquare, kSquare, 0.5, {0.9, 0.9}), NoSuchSlice);
    CHECK_THROWS_AS(compute_slice(kSquare, kSquare, 1.5, {0, 0}), NoSuchSlice);
}

TEST_CASE("slices nest") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 5; ++i) {
        const auto x = testkit::random_convex(rng, 10);
        const auto y = testkit::random_convex(rng, 10);
        const auto top = maximize_convex_overlap(x, y);
        const auto lo = compute_slice(x, y, 0.3 * top.value, top.t);
        const auto hi = compute_slice(x, y, 0.7 * top.value, top.t);
        CHECK(testkit::ring_in_convex(lo.boundary.vertices(), hi.boundary.vertices(), 1e-9));
    }
}

TEST_CASE("grid estimator: unit square inside a large square") {
    const auto big = ConvexPolygon::box(0, 0, 10, 10);
    const auto psi = approx_small_in_large(kSquare, big, 0.25);
    CHECK(psi.branch() == PiecewiseQuadratic::Branch::SmallInLarge);
    CHECK(psi(Point{-4.5, -4.5}) == doctest::Approx(1.0).epsilon(0.25));
    CHECK(psi(Point{50, 50}) == 0.0);
    CHECK(worst_error(psi, kSquare, big, 200, 1) <= 0.25);
    const std::size_t n = static_cast<std::size_t>(std::ceil(4.0 / 0.25));
    CHECK(psi.event_polygons().size() <= (n + 1) * (n + 1));
    for (const auto& e : psi.event_polygons()) CHECK(e.size() <= big.size());
    CHECK_THROWS_AS(approx_small_in_large(big, kSquare, 0.25), PreconditionError);
}

TEST_CASE("grid estimator: triangle inside a hexagon") {
    const ConvexPolygon tri({{0, 0}, {1, 0}, {0, 1}});
    const auto hex = regular(6, 5.0);
    const auto psi = approx_small_in_large(tri, hex, 0.25);
    CHECK(worst_error(psi, tri, hex, 200, 2) <= 0.25 * 0.5);
}

TEST_CASE("slice onion: unit square inside a large square") {
    const auto big = ConvexPolygon::box(0, 0, 10, 10);
    const auto psi = approx_small_in_large_slices(kSquare, big, 0.25);
    CHECK(psi.branch() == PiecewiseQuadratic::Branch::SmallInLargeSlices);
    const auto& rings = psi.event_polygons();
    REQUIRE(rings.size() == psi.levels().size());
    for (std::size_t i = 1; i < rings.size(); ++i) {
        CHECK(psi.levels()[i] > psi.levels()[i - 1]);
        CHECK(testkit::ring_in_convex(rings[i - 1].vertices(), rings[i].vertices(), 1e-9));
    }
    CHECK(worst_error(psi, kSquare, big, 200, 3) <= 0.25);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-11.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        const double v = psi(Point{u(rng), u(rng)});
        const bool is_level = v == 0.0 || std::find(psi.levels().begin(), psi.levels().end(), v) != psi.levels().end();
        CHECK(is_level);
    }
}

TEST_CASE("incomparable: crossed thin rectangles") {
    const auto h = ConvexPolygon::box(0, 0, 10, 1);
    const auto v = ConvexPolygon::box(0, 0, 1, 10);
    const auto psi = approx_incomparable(h, v, 0.1);
    CHECK(psi.branch() == PiecewiseQuadratic::Branch::Incomparable);
    CHECK(worst_error(psi, h, v, 200, 4) <= 0.1);
    // near-tangent placements along the rim of the support
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const Point t{-1.0 + 1e-6 + 0.11 * i, 1.0 - 1e-6};
        worst = std::max(worst, std::abs(psi(t) - testkit::convex_overlap(h.vertices(), v.vertices(), t)));
    }
    CHECK(worst <= 0.1);
    const auto m = maximize_convex_overlap(psi.x_approx(), psi.y_approx());
    CHECK(m.value >= 0.9);
    const std::size_t nx = psi.x_approx().size();
    const std::size_t ny = psi.y_approx().size();
    CHECK(psi.event_polygons().size() <= nx + ny);
    for (const auto& e : psi.event_polygons()) CHECK(e.size() <= std::max(nx, ny));
}

TEST_CASE("incomparable: rotated square against axis square") {
    const auto diamond = regular(4, std::sqrt(0.5));
    const auto psi = approx_incomparable(diamond, kSquare, 0.25);
    CHECK(worst_error(psi, diamond, kSquare, 200, 5) <= 0.25);
}

TEST_CASE("dispatch") {
    std::mt19937_64 rng(7);
    const auto x = testkit::random_convex(rng, 9);
    CHECK(approx_convex_pair(x, x, 0.25).branch() == PiecewiseQuadratic::Branch::Incomparable);

    const auto big = regular(8, 6.0);
    const auto small = x.scaled(0.1);
    const auto a = approx_convex_pair(small, big, 0.25);
    CHECK(a.branch() == PiecewiseQuadratic::Branch::SmallInLarge);
    CHECK_FALSE(a.negated());

    const auto b = approx_convex_pair(big, small, 0.25);
    CHECK(b.branch() == PiecewiseQuadratic::Branch::SmallInLarge);
    CHECK(b.negated());
    std::uniform_real_distribution<double> u(-7.0, 7.0);
    for (int i = 0; i < 200; ++i) {
        const Point t{u(rng), u(rng)};
        CHECK(b(t) == a(-t));
    }
    Config onion;
    onion.slice_onion = true;
    CHECK(approx_convex_pair(small, big, 0.25, onion).branch() == PiecewiseQuadratic::Branch::SmallInLargeSlices);
}

TEST_CASE("overlap is unimodal along lines") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const auto x = testkit::random_convex(rng, 12);
        const auto y = testkit::random_convex(rng, 12);
        for (int l = 0; l < 20; ++l) {
            const Point a{2 * u(rng), 2 * u(rng)};
            const Point b{2 * u(rng), 2 * u(rng)};
            std::vector<double> v;
            for (int s = 0; s <= 100; ++s) v.push_back(overlap_area(x, y, a + (s / 100.0) * (b - a)));
            std::vector<double> pre(v), suf(v);
            for (std::size_t s = 1; s < v.size(); ++s) pre[s] = std::max(pre[s - 1], v[s]);
            for (std::size_t s = v.size() - 1; s-- > 0;) suf[s] = std::max(suf[s + 1], v[s]);
            for (std::size_t s = 1; s + 1 < v.size(); ++s) CHECK(v[s] >= std::min(pre[s], suf[s]) - 1e-9);
        }
    }
}
