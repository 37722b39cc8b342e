#include "polymatch/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "polymatch/lp.hpp"

namespace polymatch {

void Config::validate() const {
    if (!(c3 > 0.0) || !(cR > 0.0) || !(c4 > 0.0) || !(grid_factor > 0.0)) {
        throw PreconditionError("configuration constants must be positive");
    }
}

ScalingSimilarity scaling_similarity(const ConvexPolygon& x, const ConvexPolygon& y, std::uint64_t seed) {
    // Center both shapes; scaling about the centroid of Y keeps every edge
    // offset positive and the program well conditioned.
    const Point cx = centroid(x.vertices());
    const Point cy = centroid(y.vertices());
    const std::size_t ny = y.size();

    const double dx = width_and_diameter(x).diameter;
    const auto wy = width_and_diameter(y);

    LinearProgram lp;
    lp.objective = {-1.0, 0.0, 0.0};
    lp.bound = 8.0 * dx / wy.width + 4.0 * (dx + wy.diameter) + 8.0;
    lp.constraints.reserve(x.size() * ny + 1);
    for (std::size_t j = 0; j < ny; ++j) {
        const Point a = y[j] - cy;
        const Point d = y.at(static_cast<std::ptrdiff_t>(j) + 1) - y[j];
        const Point n = Point{d.y, -d.x} / norm(d);
        const double h = dot(n, a);
        for (const auto& v : x.vertices()) {
            // n·(w + v) <= alpha h
            lp.constraints.push_back({{-h, n.x, n.y}, -dot(n, v - cx)});
        }
    }
    lp.constraints.push_back({{-1.0, 0.0, 0.0}, 0.0});
    const auto sol = solve_lp(lp, seed);
    if (!sol) throw std::logic_error("scaling similarity program infeasible");
    const double alpha = (*sol)[0];
    const Point w{(*sol)[1], (*sol)[2]};
    return {alpha, w - cx + alpha * cy};
}

RectSandwich bounding_rectangle(const ConvexPolygon& c) {
    const auto wd = width_and_diameter(c);
    const Point u = wd.diameter_pair.first;
    const Point v = wd.diameter_pair.second;
    const double len = distance(u, v);
    const Point e = (v - u) / len;
    Point n = perp(e);

    double h = 0.0;
    Point w = u;
    for (const auto& p : c.vertices()) {
        const double s = std::abs(dot(p - u, n));
        if (s > h) {
            h = s;
            w = p;
        }
    }
    if (dot(w - u, n) < 0.0) n = -n;
    const double foot = std::clamp(dot(w - u, e), 0.0, len);

    RectSandwich out;
    out.anchor = u + ((len + 2.0 * foot) / 4.0) * e + (h / 4.0) * n;
    out.axis = e;
    out.half_length = len / 4.0;
    out.half_height = h / 4.0;
    const Point a = out.half_length * e;
    const Point b = out.half_height * n;
    out.rect = ConvexPolygon({-a - b, a - b, a + b, b - a}, 0.0);
    return out;
}

ConvexPolygon approx_polygon(const ConvexPolygon& p, int m) {
    if (m < 1) throw PreconditionError("approx_polygon requires m >= 1");
    const auto& v = p.vertices();
    const std::size_t n = v.size();
    const auto wd = width_and_diameter(p);
    const Point base = v[wd.width_edge];
    const Point dir = (v[(wd.width_edge + 1) % n] - base) / distance(v[(wd.width_edge + 1) % n], base);
    const Point up = perp(dir);  // interior side for a ccw polygon
    const double width = wd.width;
    const double tol = 1e-12 * std::max(1.0, wd.diameter);

    std::vector<double> height(n);
    std::vector<double> along(n);
    for (std::size_t i = 0; i < n; ++i) {
        height[i] = dot(v[i] - base, up);
        along[i] = dot(v[i] - base, dir);
    }
    const double min_along = *std::min_element(along.begin(), along.end());
    const double max_along = *std::max_element(along.begin(), along.end());

    std::vector<Point> marked;
    marked.reserve(2 * static_cast<std::size_t>(m) + 8);
    // Contact vertices of the extreme rectangle: the width edge, the opposite
    // support line, and both extremes along the width edge direction.
    for (std::size_t i = 0; i < n; ++i) {
        const bool on_base = i == wd.width_edge || i == (wd.width_edge + 1) % n;
        const bool on_top = height[i] >= width - tol;
        const bool extreme = along[i] <= min_along + tol || along[i] >= max_along - tol;
        if (on_base || on_top || extreme) marked.push_back(v[i]);
    }

    const double step = width / (m + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = (i + 1) % n;
        const double h0 = height[i];
        const double h1 = height[k];
        if (h0 == h1) continue;
        const double lo = std::min(h0, h1);
        const double hi = std::max(h0, h1);
        // Lines strictly between the two width support lines.
        const int first = std::max(1, static_cast<int>(std::floor(lo / step)));
        for (int line = first; line <= m; ++line) {
            const double level = line * step;
            if (level < lo) continue;
            if (level > hi) break;
            const double f = (level - h0) / (h1 - h0);
            marked.push_back(v[i] + f * (v[k] - v[i]));
        }
    }
    return ConvexPolygon::hull_of(marked, tol);
}

OverlapRect const_approx_by_rect(const ConvexPolygon& x, const ConvexPolygon& y, const Config& cfg) {
    const auto rx = bounding_rectangle(x);
    const auto ry = bounding_rectangle(y);
    const auto common = convex_intersection(rx.rect, ry.rect);
    if (!common) throw std::logic_error("centered rectangles do not intersect");
    OverlapRect out;
    out.frame = bounding_rectangle(*common);
    // r_M = 5 r is the outer rectangle of the sandwich around rx ∩ ry.
    out.rect = out.frame.rect.scaled(5.0 / cfg.c3);
    out.c_r = cfg.cR;
    return out;
}

int slice_count(double eps, const Config& cfg) {
    return static_cast<int>(std::ceil(cfg.c4 / eps));
}

Preprocessed preprocess(const ConvexPolygon& x, const ConvexPolygon& y, double eps, const Config& cfg) {
    if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("eps must lie in (0, 1)");
    cfg.validate();
    const auto rm = const_approx_by_rect(x, y, cfg);
    const double scale = 5.0 / cfg.c3;
    const double half_u = 2.0 * cfg.cR * rm.frame.half_length * scale;
    const double half_v = 2.0 * cfg.cR * rm.frame.half_height * scale;
    const Point e = rm.frame.axis;
    const Point n = perp(e);
    // T(p) = (e·p / (2 half_u) + 1/2, n·p / (2 half_v) + 1/2)
    const AffineMap t({e.x / (2.0 * half_u), e.y / (2.0 * half_u), n.x / (2.0 * half_v), n.y / (2.0 * half_v)},
                      {0.5, 0.5});
    const AffineMap tinv = t.inverse();

    Preprocessed out;
    out.map = t;
    out.overlap_rect = rm.rect;
    out.slices = slice_count(eps, cfg);
    out.x_approx = approx_polygon(apply_affine(t, x), out.slices);
    out.y_approx = approx_polygon(apply_affine(t, y), out.slices);
    out.x_back = apply_affine(tinv, out.x_approx);
    out.y_back = apply_affine(tinv, out.y_approx);
    return out;
}

}  // namespace polymatch
