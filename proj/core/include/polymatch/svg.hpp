#pragma once

#include <span>
#include <string>
#include <vector>

#include "polymatch/geom.hpp"

namespace polymatch {

/// Minimal SVG canvas in world coordinates (y up).
class SvgCanvas {
public:
    void polygon(std::span<const Point> ring, const std::string& fill, const std::string& stroke = "#222",
                 double opacity = 0.5);
    void polyline(std::span<const Point> pts, const std::string& stroke);
    void marker(const Point& p, const std::string& color);

    std::string str(double width_px = 640.0) const;
    void save(const std::string& path, double width_px = 640.0) const;

    /// Fill color for the i-th item of a sequence.
    static std::string palette(std::size_t i);

private:
    struct Item {
        enum class Kind { Polygon, Polyline, Marker } kind;
        std::vector<Point> pts;
        std::string fill;
        std::string stroke;
        double opacity;
    };
    std::vector<Item> items_;
};

}  // namespace polymatch
