#include "polymatch/overlap.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "polymatch/approx.hpp"

namespace polymatch {

Quadratic2& Quadratic2::operator+=(const Quadratic2& o) {
    a += o.a;
    b += o.b;
    c += o.c;
    d += o.d;
    e += o.e;
    g += o.g;
    return *this;
}

namespace {

// c + x tx + y ty
struct Linear2 {
    double c = 0.0, x = 0.0, y = 0.0;
};

Quadratic2 product(const Linear2& l, const Linear2& r) {
    return {l.x * r.x, l.x * r.y + l.y * r.x, l.y * r.y, l.c * r.x + l.x * r.c, l.c * r.y + l.y * r.c,
            l.c * r.c};
}

struct Line {
    Point p;      // base point relative to the origin shift
    Point d;      // direction
    double move;  // 1 if the line translates with t
};

Line edge_line(const ConvexPolygon& x, const ConvexPolygon& y, const EdgeRef& e, const Point& origin) {
    const ConvexPolygon& poly = e.source == Source::X ? x : y;
    const Point a = poly[static_cast<std::size_t>(e.index)];
    const Point b = poly.at(e.index + 1);
    return {a - origin, b - a, e.source == Source::Y ? 1.0 : 0.0};
}

// Intersection of two supporting lines as an affine function of t.
std::array<Linear2, 2> vertex_form(const Line& l1, const Line& l2, const Point& fallback) {
    const double den = cross(l1.d, l2.d);
    if (den == 0.0) {
        // Parallel lines only meet in degenerate configurations; freeze the vertex.
        return {Linear2{fallback.x, 0.0, 0.0}, Linear2{fallback.y, 0.0, 0.0}};
    }
    const double k = l2.move - l1.move;
    const double s0 = cross(l2.p - l1.p, l2.d) / den;
    const double sx = k * l2.d.y / den;
    const double sy = -k * l2.d.x / den;
    return {Linear2{l1.p.x + l1.d.x * s0, l1.move + l1.d.x * sx, l1.d.x * sy},
            Linear2{l1.p.y + l1.d.y * s0, l1.d.y * sx, l1.move + l1.d.y * sy}};
}

double combined_scale(const ConvexPolygon& x, const ConvexPolygon& y) {
    const auto bx = bounding_box(x.vertices());
    const auto by = bounding_box(y.vertices());
    return std::max({1.0, bx.width(), bx.height(), by.width(), by.height()});
}

}  // namespace

Quadratic2 face_quadratic_unchecked(const ConvexPolygon& x, const ConvexPolygon& y, const Point& t0) {
    const ClipResult clip = clip_convex(x, y, t0);
    if (clip.empty()) return {};
    const Point origin = x[0];
    const std::size_t n = clip.vertices.size();
    std::vector<std::array<Linear2, 2>> forms(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& [l1, l2] = clip.lines[i];
        forms[i] = vertex_form(edge_line(x, y, l1, origin), edge_line(x, y, l2, origin),
                               clip.vertices[i] - origin);
    }
    Quadratic2 q;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& u = forms[i];
        const auto& v = forms[(i + 1) % n];
        q += product(u[0], v[1]);
        Quadratic2 neg = product(u[1], v[0]);
        q.a -= neg.a;
        q.b -= neg.b;
        q.c -= neg.c;
        q.d -= neg.d;
        q.e -= neg.e;
        q.g -= neg.g;
    }
    q.a *= 0.5;
    q.b *= 0.5;
    q.c *= 0.5;
    q.d *= 0.5;
    q.e *= 0.5;
    q.g *= 0.5;
    return q;
}

Quadratic2 face_quadratic(const ConvexPolygon& x, const ConvexPolygon& y, const Point& t0) {
    const double delta = 1e-9 * combined_scale(x, y);
    const std::size_t nx = x.size();
    const std::size_t ny = y.size();
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j) {
            const Point ya = y[j] + t0;
            const Point yb = y[(j + 1) % ny] + t0;
            if (point_segment_distance(x[i], ya, yb) <= delta) {
                throw DegenerateConfiguration("vertex of X on the boundary of t + Y");
            }
            if (point_segment_distance(y[j] + t0, x[i], x[(i + 1) % nx]) <= delta) {
                throw DegenerateConfiguration("vertex of t + Y on the boundary of X");
            }
        }
    }
    return face_quadratic_unchecked(x, y, t0);
}

namespace {

void consider(Maximum& best, bool& have, const Quadratic2& q, const Point& p) {
    const double v = q(p);
    if (!have || v > best.value) {
        best = {p, v};
        have = true;
    }
}

void consider_edge(Maximum& best, bool& have, const Quadratic2& q, const Point& p, const Point& r) {
    consider(best, have, q, p);
    const Point d = r - p;
    // q(p + s d) = A s² + B s + C
    const double aa = q.a * d.x * d.x + q.b * d.x * d.y + q.c * d.y * d.y;
    const double bb = (2.0 * q.a * p.x + q.b * p.y + q.d) * d.x + (2.0 * q.c * p.y + q.b * p.x + q.e) * d.y;
    if (aa < 0.0) {
        const double s = -bb / (2.0 * aa);
        if (s > 0.0 && s < 1.0) consider(best, have, q, p + s * d);
    }
}

std::optional<Point> stationary_point(const Quadratic2& q) {
    // [2a b; b 2c] t = -[d; e]
    const double det = 4.0 * q.a * q.c - q.b * q.b;
    const double scale = std::max({std::abs(q.a), std::abs(q.b), std::abs(q.c)});
    if (scale == 0.0 || std::abs(det) <= 1e-14 * scale * scale) return std::nullopt;
    // Only a maximum when the Hessian is negative definite.
    if (!(q.a < 0.0 && det > 0.0)) return std::nullopt;
    return Point{(-q.d * 2.0 * q.c + q.b * q.e) / det, (-2.0 * q.a * q.e + q.b * q.d) / det};
}

}  // namespace

Maximum maximize_quadratic_over_convex(const Quadratic2& q, const ConvexPolygon& face) {
    Maximum best;
    bool have = false;
    const std::size_t n = face.size();
    for (std::size_t i = 0; i < n; ++i) consider_edge(best, have, q, face[i], face[(i + 1) % n]);
    if (auto s = stationary_point(q); s && face.contains(*s, 0.0)) consider(best, have, q, *s);
    return best;
}

Maximum maximize_quadratic_over_region(const Quadratic2& q, std::span<const Point> outer,
                                       std::span<const std::vector<Point>> holes) {
    if (outer.empty()) throw PreconditionError("empty region");
    Maximum best;
    bool have = false;
    auto ring_edges = [&](std::span<const Point> ring) {
        const std::size_t n = ring.size();
        for (std::size_t i = 0; i < n; ++i) consider_edge(best, have, q, ring[i], ring[(i + 1) % n]);
    };
    ring_edges(outer);
    for (const auto& h : holes) ring_edges(h);
    if (auto s = stationary_point(q); s && point_in_ring(*s, outer)) {
        const bool in_hole = std::any_of(holes.begin(), holes.end(),
                                         [&](const std::vector<Point>& h) { return point_in_ring(*s, h); });
        if (!in_hole) consider(best, have, q, *s);
    }
    return best;
}

Maximum maximize_convex_overlap(const ConvexPolygon& x, const ConvexPolygon& y) {
    const auto bx = bounding_box(x.vertices());
    const auto by = bounding_box(y.vertices());
    const double lo_x = bx.min_x - by.max_x;
    const double hi_x = bx.max_x - by.min_x;
    const double lo_y = bx.min_y - by.max_y;
    const double hi_y = bx.max_y - by.min_y;

    constexpr int kGrid = 33;
    Maximum best{centroid(x.vertices()) - centroid(y.vertices()), 0.0};
    best.value = overlap_area(x, y, best.t);
    for (int i = 0; i <= kGrid; ++i) {
        for (int j = 0; j <= kGrid; ++j) {
            const Point t{lo_x + (hi_x - lo_x) * i / kGrid, lo_y + (hi_y - lo_y) * j / kGrid};
            const double v = overlap_area(x, y, t);
            if (v > best.value) best = {t, v};
        }
    }

    // Pattern search; sqrt of the overlap is concave on its support so the
    // only stalls are on ridges, which the 16 directions resolve.
    constexpr int kDirs = 16;
    std::array<Point, kDirs> dirs;
    for (int k = 0; k < kDirs; ++k) {
        const double a = 2.0 * 3.14159265358979323846 * k / kDirs;
        dirs[static_cast<std::size_t>(k)] = {std::cos(a), std::sin(a)};
    }
    double step = std::max(hi_x - lo_x, hi_y - lo_y) / kGrid;
    const double stop = 1e-13 * std::max({1.0, hi_x - lo_x, hi_y - lo_y});
    while (step > stop) {
        bool moved = false;
        for (const auto& d : dirs) {
            const Point t = best.t + step * d;
            const double v = overlap_area(x, y, t);
            if (v > best.value) {
                best = {t, v};
                moved = true;
            }
        }
        if (!moved) step *= 0.5;
    }
    return best;
}

// ---------------------------------------------------------------------------

std::string_view PiecewiseQuadratic::branch_name() const {
    switch (branch_) {
        case Branch::SmallInLarge: return negated_ ? "large-small" : "small-large";
        case Branch::SmallInLargeSlices: return negated_ ? "large-small-slices" : "small-large-slices";
        case Branch::Incomparable: return "incomparable";
    }
    return "unknown";
}

double PiecewiseQuadratic::evaluate_unreflected(const Point& t) const {
    switch (branch_) {
        case Branch::SmallInLarge: {
            // t ∈ p − Y  ⇔  p − t ∈ Y
            std::size_t count = 0;
            for (const auto& p : grid_) {
                if (large_.contains(p - t, 0.0)) ++count;
            }
            return cell_area_ * static_cast<double>(count);
        }
        case Branch::SmallInLargeSlices: {
            for (std::size_t i = rings_.size(); i-- > 0;) {
                if (rings_[i].contains(t, 0.0)) return levels_[i];
            }
            return 0.0;
        }
        case Branch::Incomparable: return overlap_area(x_, y_, t);
    }
    return 0.0;
}

double PiecewiseQuadratic::operator()(const Point& t) const {
    return evaluate_unreflected(negated_ ? -t : t);
}

Quadratic2 PiecewiseQuadratic::face_function(const Point& t) const {
    if (branch_ != Branch::Incomparable) return Quadratic2::constant((*this)(t));
    if (!negated_) return face_quadratic_unchecked(x_, y_, t);
    return face_quadratic_unchecked(x_, y_, -t).reflected();
}

void PiecewiseQuadratic::negate() {
    negated_ = true;
    for (auto& ev : events_) ev = ev.reflected();
}

bool fits_inside(const ConvexPolygon& x, const ConvexPolygon& y, const Config& cfg) {
    return scaling_similarity(x, y, cfg.lp_seed).alpha < 1.0 - kTau;
}

PiecewiseQuadratic approx_small_in_large(const ConvexPolygon& x, const ConvexPolygon& y, double eps,
                                         const Config& cfg) {
    if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("eps must lie in (0, 1)");
    cfg.validate();
    if (!fits_inside(x, y, cfg)) throw PreconditionError("X does not fit inside a translate of Y");

    const auto rs = bounding_rectangle(x);
    const int n = static_cast<int>(std::ceil(cfg.grid_factor / eps));
    // The outer rectangle anchor + 5 rect contains X.
    const double len = 10.0 * rs.half_length;
    const double hgt = 10.0 * rs.half_height;
    const Point e = rs.axis;
    const Point up = perp(e);
    const Point corner = rs.anchor - (0.5 * len) * e - (0.5 * hgt) * up;

    PiecewiseQuadratic out;
    out.branch_ = PiecewiseQuadratic::Branch::SmallInLarge;
    out.eps_ = eps;
    out.large_ = y;
    out.cell_area_ = (len / n) * (hgt / n);
    const ConvexPolygon neg_y = y.reflected();
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            const Point p = corner + (len * i / n) * e + (hgt * j / n) * up;
            if (!x.contains(p, 0.0)) continue;
            out.grid_.push_back(p);
            out.events_.push_back(neg_y.translated(p));
            out.kinds_.push_back(PiecewiseQuadratic::EventKind::GridPoint);
        }
    }
    return out;
}

PiecewiseQuadratic approx_small_in_large_slices(const ConvexPolygon& x, const ConvexPolygon& y, double eps,
                                                const Config& cfg) {
    if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("eps must lie in (0, 1)");
    cfg.validate();
    if (!fits_inside(x, y, cfg)) throw PreconditionError("X does not fit inside a translate of Y");

    const double sub = eps / 4.0;
    const ConvexPolygon xp = preprocess(x, y, sub, cfg).x_back;
    const Maximum top = maximize_convex_overlap(xp, y);

    PiecewiseQuadratic out;
    out.branch_ = PiecewiseQuadratic::Branch::SmallInLargeSlices;
    out.eps_ = eps;
    const int levels = static_cast<int>(std::ceil(1.0 / sub));
    double prev = 0.0;
    for (int i = 0; i < levels; ++i) {
        // The top level sits just under the maximum so its slice keeps area.
        const double alpha = std::min((i + 1) * sub, 1.0 - 1e-9) * top.value;
        if (alpha <= prev) continue;
        prev = alpha;
        out.rings_.push_back(compute_slice(xp, y, alpha, top.t).boundary);
        out.levels_.push_back(alpha);
        out.events_.push_back(out.rings_.back());
        out.kinds_.push_back(PiecewiseQuadratic::EventKind::SliceRing);
    }
    return out;
}

PiecewiseQuadratic approx_incomparable(const ConvexPolygon& x, const ConvexPolygon& y, double eps,
                                       const Config& cfg) {
    const auto pre = preprocess(x, y, eps, cfg);
    if (scaling_similarity(x, y, cfg.lp_seed).alpha < 1.0 - kTau ||
        scaling_similarity(y, x, cfg.lp_seed).alpha < 1.0 - kTau) {
        throw PreconditionError("pair is not incomparable");
    }
    PiecewiseQuadratic out;
    out.branch_ = PiecewiseQuadratic::Branch::Incomparable;
    out.eps_ = eps;
    out.x_ = pre.x_back;
    out.y_ = pre.y_back;
    // t + Y' gains or loses a vertex on an edge exactly on these boundaries.
    const ConvexPolygon neg_y = out.y_.reflected();
    for (const auto& v : out.x_.vertices()) {
        out.events_.push_back(neg_y.translated(v));
        out.kinds_.push_back(PiecewiseQuadratic::EventKind::VertexInRegion);
    }
    for (const auto& w : out.y_.vertices()) {
        out.events_.push_back(out.x_.translated(-w));
        out.kinds_.push_back(PiecewiseQuadratic::EventKind::VertexInRegion);
    }
    return out;
}

PiecewiseQuadratic approx_convex_pair(const ConvexPolygon& x, const ConvexPolygon& y, double eps,
                                      const Config& cfg) {
    if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("eps must lie in (0, 1)");
    cfg.validate();
    auto small = [&](const ConvexPolygon& a, const ConvexPolygon& b) {
        return cfg.slice_onion ? approx_small_in_large_slices(a, b, eps, cfg)
                               : approx_small_in_large(a, b, eps, cfg);
    };
    if (fits_inside(x, y, cfg)) return small(x, y);
    if (fits_inside(y, x, cfg)) {
        // overlap(X, t + Y) = overlap(Y, −t + X)
        PiecewiseQuadratic out = small(y, x);
        out.negate();
        return out;
    }
    return approx_incomparable(x, y, eps, cfg);
}

}  // namespace polymatch
