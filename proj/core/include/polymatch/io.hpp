#pragma once

#include <string>
#include <string_view>

#include "polymatch/config.hpp"
#include "polymatch/geom.hpp"

namespace polymatch {

/// Malformed input file; the message names the offending token or vertex.
class ParseError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

/// {"ring": [[x, y], ...], "parts": [[[x, y], ...], ...]}; parts optional.
SimplePolygon parse_polygon(std::string_view text);
std::string format_polygon(const SimplePolygon& poly);

SimplePolygon read_polygon_file(const std::string& path);
void write_polygon_file(const std::string& path, const SimplePolygon& poly);

/// Outer ring of a WKT POLYGON; interior rings are rejected.
SimplePolygon parse_wkt_polygon(std::string_view text);

/// Saved inputs of a match run, enough to rebuild its query structure.
struct MatchContext {
    SimplePolygon p;
    SimplePolygon q;
    double eps = 0.0;
    Config config;
};

std::string format_context(const MatchContext& ctx);
MatchContext parse_context(std::string_view text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace polymatch
