#include <doctest.h>

#include <cstring>
#include <random>
#include <string>

#include "polymatch/io.hpp"
#include "polymatch/svg.hpp"
#include "support.hpp"

using namespace polymatch;

TEST_CASE("polygon text round-trips bit-exactly") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
        const auto c = testkit::random_convex(rng, 3 + static_cast<int>(rng() % 20), 1e3);
        const SimplePolygon p(c.vertices());
        const SimplePolygon back = parse_polygon(format_polygon(p));
        REQUIRE(back.ring().size() == p.ring().size());
        for (std::size_t k = 0; k < p.ring().size(); ++k) {
            CHECK(std::memcmp(&back.ring()[k], &p.ring()[k], sizeof(Point)) == 0);
        }
    }
}

TEST_CASE("parts round-trip") {
    const SimplePolygon l(testkit::l_shape(), {ConvexPolygon::box(0, 0, 2, 1), ConvexPolygon::box(0, 1, 1, 2)});
    const SimplePolygon back = parse_polygon(format_polygon(l));
    REQUIRE(back.has_parts());
    CHECK(back.parts()->size() == 2);
    CHECK(format_polygon(back) == format_polygon(l));
}

TEST_CASE("parse errors name what went wrong") {
    auto message = [](const std::string& text) {
        try {
            parse_polygon(text);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message("{\"ring\": [[0,0],[1,0],[1,1]").find("parse error") != std::string::npos);
    CHECK(message("{\"rung\": []}").find("ring") != std::string::npos);
    CHECK(message("{\"ring\": [[0,0],[1,\"x\"],[1,1]]}").find("vertex 1") != std::string::npos);
    CHECK_THROWS_AS(parse_polygon("{\"ring\": [[0,0],[1,1],[1,0],[0,1]]}"), GeometryError);
}

TEST_CASE("WKT import") {
    const auto p = parse_wkt_polygon("POLYGON ((0 0, 2 0, 2 1, 1 1, 1 2, 0 2, 0 0))");
    CHECK(area(p) == doctest::Approx(3.0));
    CHECK_THROWS_AS(parse_wkt_polygon("POLYGON ((0 0, 4 0, 4 4, 0 4, 0 0), (1 1, 2 1, 2 2, 1 1))"), ParseError);
    CHECK_THROWS_AS(parse_wkt_polygon("LINESTRING (0 0, 1 1)"), ParseError);
}

TEST_CASE("match context round-trips") {
    MatchContext ctx{SimplePolygon(testkit::plus_sign()), SimplePolygon(testkit::u_shape()), 0.2, {}};
    ctx.config.c4 = 40.0;
    ctx.config.slice_onion = true;
    ctx.config.lp_seed = 123456789012345ULL;
    const auto text = format_context(ctx);
    const auto back = parse_context(text);
    CHECK(back.eps == 0.2);
    CHECK(back.config.c4 == 40.0);
    CHECK(back.config.slice_onion);
    CHECK(back.config.lp_seed == 123456789012345ULL);
    CHECK(format_context(back) == text);
}

TEST_CASE("svg output is well formed") {
    SvgCanvas svg;
    svg.polygon(testkit::l_shape(), SvgCanvas::palette(0));
    const std::vector<Point> diag{{0, 0}, {1, 1}};
    svg.polyline(diag, "#f00");
    svg.marker({0.5, 0.5}, "#000");
    const std::string s = svg.str(400);
    CHECK(s.rfind("<svg", 0) == 0);
    CHECK(s.find("</svg>") != std::string::npos);
    CHECK(s.find("<polygon") != std::string::npos);
}
