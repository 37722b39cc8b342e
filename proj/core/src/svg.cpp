#include "polymatch/svg.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

namespace polymatch {

void SvgCanvas::polygon(std::span<const Point> ring, const std::string& fill, const std::string& stroke,
                        double opacity) {
    items_.push_back({Item::Kind::Polygon, {ring.begin(), ring.end()}, fill, stroke, opacity});
}

void SvgCanvas::polyline(std::span<const Point> pts, const std::string& stroke) {
    items_.push_back({Item::Kind::Polyline, {pts.begin(), pts.end()}, "none", stroke, 1.0});
}

void SvgCanvas::marker(const Point& p, const std::string& color) {
    items_.push_back({Item::Kind::Marker, {p}, color, color, 1.0});
}

std::string SvgCanvas::palette(std::size_t i) {
    static constexpr std::array<const char*, 8> kColors = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2",
                                                           "#59a14f", "#edc948", "#b07aa1", "#ff9da7"};
    return kColors[i % kColors.size()];
}

std::string SvgCanvas::str(double width_px) const {
    std::vector<Point> all;
    for (const auto& it : items_) all.insert(all.end(), it.pts.begin(), it.pts.end());
    BoundingBox box{0.0, 0.0, 1.0, 1.0};
    if (!all.empty()) box = bounding_box(all);
    const double span = std::max({box.width(), box.height(), 1e-12});
    const double pad = 0.05 * span;
    const double w = box.width() + 2 * pad;
    const double h = box.height() + 2 * pad;
    const double height_px = width_px * h / w;
    const double stroke = 0.003 * span;

    std::ostringstream out;
    out.precision(10);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_px << "\" height=\"" << height_px
        << "\" viewBox=\"" << box.min_x - pad << ' ' << -(box.max_y + pad) << ' ' << w << ' ' << h << "\">\n";
    out << "<g transform=\"scale(1,-1)\" stroke-width=\"" << stroke << "\">\n";
    for (const auto& it : items_) {
        if (it.kind == Item::Kind::Marker) {
            out << "<circle cx=\"" << it.pts[0].x << "\" cy=\"" << it.pts[0].y << "\" r=\"" << 4 * stroke
                << "\" fill=\"" << it.fill << "\"/>\n";
            continue;
        }
        out << (it.kind == Item::Kind::Polygon ? "<polygon" : "<polyline") << " points=\"";
        for (std::size_t i = 0; i < it.pts.size(); ++i) {
            out << (i ? " " : "") << it.pts[i].x << ',' << it.pts[i].y;
        }
        out << "\" fill=\"" << it.fill << "\" fill-opacity=\"" << it.opacity << "\" stroke=\"" << it.stroke
            << "\"/>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

void SvgCanvas::save(const std::string& path, double width_px) const {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << str(width_px);
}

}  // namespace polymatch
