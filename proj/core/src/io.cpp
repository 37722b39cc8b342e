#include "polymatch/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace polymatch {

namespace {

using nlohmann::json;

std::vector<Point> ring_from(const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array of [x, y] pairs");
    std::vector<Point> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& v = j[i];
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
            throw ParseError(where + " vertex " + std::to_string(i) + ": expected [x, y] with two numbers, got " +
                             v.dump());
        }
        const Point p{v[0].get<double>(), v[1].get<double>()};
        if (!is_finite(p)) throw ParseError(where + " vertex " + std::to_string(i) + ": non-finite coordinate");
        out.push_back(p);
    }
    return out;
}

json ring_to(std::span<const Point> ring) {
    json out = json::array();
    for (const auto& p : ring) out.push_back({p.x, p.y});
    return out;
}

json polygon_to(const SimplePolygon& poly) {
    json out = json::object();
    out["ring"] = ring_to(poly.ring());
    if (poly.has_parts()) {
        json parts = json::array();
        for (const auto& part : *poly.parts()) parts.push_back(ring_to(part.vertices()));
        out["parts"] = std::move(parts);
    }
    return out;
}

SimplePolygon polygon_from(const json& j) {
    if (!j.is_object() || !j.contains("ring")) throw ParseError("polygon: missing \"ring\" field");
    SimplePolygon poly(ring_from(j.at("ring"), "ring"));
    if (j.contains("parts")) {
        const json& parts = j.at("parts");
        if (!parts.is_array()) throw ParseError("parts: expected an array of rings");
        std::vector<ConvexPolygon> out;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const std::string where = "part " + std::to_string(i);
            try {
                out.emplace_back(ring_from(parts[i], where));
            } catch (const ParseError&) {
                throw;
            } catch (const GeometryError& e) {
                throw GeometryError(where + ": " + e.what());
            }
        }
        poly.set_parts(std::move(out));
    }
    return poly;
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

SimplePolygon parse_polygon(std::string_view text) { return polygon_from(parse_json(text)); }

std::string format_polygon(const SimplePolygon& poly) { return polygon_to(poly).dump() + "\n"; }

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

SimplePolygon read_polygon_file(const std::string& path) {
    const std::string text = read_text_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && std::toupper(static_cast<unsigned char>(text[first])) == 'P') {
        return parse_wkt_polygon(text);
    }
    try {
        return parse_polygon(text);
    } catch (const GeometryError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_polygon_file(const std::string& path, const SimplePolygon& poly) {
    write_text_file(path, format_polygon(poly));
}

SimplePolygon parse_wkt_polygon(std::string_view text) {
    std::string s(text);
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    };
    auto expect = [&](char c) {
        skip();
        if (pos >= s.size() || s[pos] != c) {
            throw ParseError("WKT: expected '" + std::string(1, c) + "' at offset " + std::to_string(pos));
        }
        ++pos;
    };
    skip();
    std::string word;
    while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) {
        word += static_cast<char>(std::toupper(static_cast<unsigned char>(s[pos++])));
    }
    if (word != "POLYGON") throw ParseError("WKT: expected POLYGON, got '" + word + "'");
    expect('(');
    expect('(');
    std::vector<Point> ring;
    while (true) {
        Point p;
        skip();
        const char* begin = s.c_str() + pos;
        char* end = nullptr;
        p.x = std::strtod(begin, &end);
        if (end == begin) throw ParseError("WKT: expected a number at offset " + std::to_string(pos));
        pos += static_cast<std::size_t>(end - begin);
        skip();
        begin = s.c_str() + pos;
        p.y = std::strtod(begin, &end);
        if (end == begin) throw ParseError("WKT: expected a number at offset " + std::to_string(pos));
        pos += static_cast<std::size_t>(end - begin);
        ring.push_back(p);
        skip();
        if (pos < s.size() && s[pos] == ',') {
            ++pos;
            continue;
        }
        break;
    }
    expect(')');
    skip();
    if (pos < s.size() && s[pos] == ',') throw ParseError("WKT: interior rings are not supported");
    expect(')');
    if (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();
    return SimplePolygon(std::move(ring));
}

std::string format_context(const MatchContext& ctx) {
    nlohmann::ordered_json j;
    j["p"] = polygon_to(ctx.p);
    j["q"] = polygon_to(ctx.q);
    j["eps"] = ctx.eps;
    j["config"] = {{"c3", ctx.config.c3},
                   {"cR", ctx.config.cR},
                   {"c4", ctx.config.c4},
                   {"grid_factor", ctx.config.grid_factor},
                   {"lp_seed", ctx.config.lp_seed},
                   {"slice_onion", ctx.config.slice_onion},
                   {"linear_scan", ctx.config.linear_scan},
                   {"parallel_pairs", ctx.config.parallel_pairs}};
    return j.dump() + "\n";
}

MatchContext parse_context(std::string_view text) {
    const json j = parse_json(text);
    try {
        MatchContext ctx;
        ctx.p = polygon_from(j.at("p"));
        ctx.q = polygon_from(j.at("q"));
        ctx.eps = j.at("eps").get<double>();
        const json& c = j.at("config");
        ctx.config.c3 = c.at("c3").get<double>();
        ctx.config.cR = c.at("cR").get<double>();
        ctx.config.c4 = c.at("c4").get<double>();
        ctx.config.grid_factor = c.at("grid_factor").get<double>();
        ctx.config.lp_seed = c.at("lp_seed").get<std::uint64_t>();
        ctx.config.slice_onion = c.at("slice_onion").get<bool>();
        ctx.config.linear_scan = c.at("linear_scan").get<bool>();
        ctx.config.parallel_pairs = c.at("parallel_pairs").get<bool>();
        return ctx;
    } catch (const json::exception& e) {
        throw ParseError(std::string("match context: ") + e.what());
    }
}

}  // namespace polymatch
