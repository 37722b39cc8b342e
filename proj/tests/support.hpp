#pragma once

// Reference geometry for tests. Nothing here calls into the library's
// clipping, containment or width code, so it can serve as an oracle.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "polymatch/geom.hpp"

namespace testkit {

using polymatch::Point;
using Ring = std::vector<Point>;

inline double cross3(const Point& a, const Point& b, const Point& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

inline double shoelace(const Ring& r) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const Point& a = r[i];
        const Point& b = r[(i + 1) % r.size()];
        s += a.x * b.y - a.y * b.x;
    }
    return 0.5 * s;
}

inline Ring shifted(const Ring& r, const Point& t) {
    Ring out;
    out.reserve(r.size());
    for (const auto& p : r) out.push_back({p.x + t.x, p.y + t.y});
    return out;
}

inline Ring reflected(const Ring& r) {
    Ring out;
    for (const auto& p : r) out.push_back({-p.x, -p.y});
    return out;
}

/// Sutherland-Hodgman: subject (any orientation) clipped by a ccw convex ring.
inline Ring clip_sh(Ring subject, const Ring& clip) {
    for (std::size_t i = 0; i < clip.size() && !subject.empty(); ++i) {
        const Point a = clip[i];
        const Point b = clip[(i + 1) % clip.size()];
        Ring out;
        for (std::size_t j = 0; j < subject.size(); ++j) {
            const Point p = subject[j];
            const Point q = subject[(j + 1) % subject.size()];
            const double sp = cross3(a, b, p);
            const double sq = cross3(a, b, q);
            if (sp >= 0.0) out.push_back(p);
            if ((sp >= 0.0) != (sq >= 0.0)) {
                const double u = sp / (sp - sq);
                out.push_back({p.x + u * (q.x - p.x), p.y + u * (q.y - p.y)});
            }
        }
        subject = std::move(out);
    }
    return subject;
}

/// area(A ∩ (t + B)) for ccw convex rings.
inline double convex_overlap(const Ring& a, const Ring& b, const Point& t) {
    return std::abs(shoelace(clip_sh(a, shifted(b, t))));
}

/// Signed fan triangles from the first vertex: the indicator of a simple ring
/// equals the signed sum of the fan triangle indicators almost everywhere.
inline std::vector<std::pair<Ring, double>> fan(const Ring& r) {
    std::vector<std::pair<Ring, double>> out;
    for (std::size_t i = 1; i + 1 < r.size(); ++i) {
        Ring tri{r[0], r[i], r[i + 1]};
        const double s = shoelace(tri);
        if (s == 0.0) continue;
        if (s < 0.0) std::swap(tri[1], tri[2]);
        out.emplace_back(std::move(tri), s > 0.0 ? 1.0 : -1.0);
    }
    return out;
}

/// area(P ∩ (t + Q)) for simple rings, with no convex decomposition involved.
inline double fan_overlap(const Ring& p, const Ring& q, const Point& t) {
    const auto fp = fan(p);
    const auto fq = fan(shifted(q, t));
    double sum = 0.0;
    for (const auto& [a, sa] : fp) {
        for (const auto& [b, sb] : fq) sum += sa * sb * std::abs(shoelace(clip_sh(a, b)));
    }
    return sum;
}

inline double seg_dist(const Point& p, const Point& a, const Point& b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double l2 = dx * dx + dy * dy;
    double u = l2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / l2 : 0.0;
    u = std::clamp(u, 0.0, 1.0);
    return std::hypot(p.x - a.x - u * dx, p.y - a.y - u * dy);
}

/// Signed distance of p to the supporting line of each edge; p is inside when
/// every value exceeds -tol.
inline bool in_convex(const Ring& r, const Point& p, double tol) {
    for (std::size_t i = 0; i < r.size(); ++i) {
        const Point& a = r[i];
        const Point& b = r[(i + 1) % r.size()];
        const double len = std::hypot(b.x - a.x, b.y - a.y);
        if (cross3(a, b, p) / len < -tol) return false;
    }
    return true;
}

inline bool ring_in_convex(const Ring& outer, const Ring& inner, double tol) {
    return std::all_of(inner.begin(), inner.end(), [&](const Point& p) { return in_convex(outer, p, tol); });
}

inline double dist_to_convex(const Ring& r, const Point& p) {
    if (in_convex(r, p, 0.0)) return 0.0;
    double d = INFINITY;
    for (std::size_t i = 0; i < r.size(); ++i) d = std::min(d, seg_dist(p, r[i], r[(i + 1) % r.size()]));
    return d;
}

/// Minimum over edges of the farthest vertex from the edge's line.
inline double brute_width(const Ring& r) {
    double w = INFINITY;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const Point& a = r[i];
        const Point& b = r[(i + 1) % r.size()];
        const double len = std::hypot(b.x - a.x, b.y - a.y);
        double far = 0.0;
        for (const auto& p : r) far = std::max(far, std::abs(cross3(a, b, p)) / len);
        w = std::min(w, far);
    }
    return w;
}

inline bool is_convex_ccw(const Ring& r, double tol) {
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (cross3(r[i], r[(i + 1) % r.size()], r[(i + 2) % r.size()]) < -tol) return false;
    }
    return shoelace(r) > 0.0;
}

/// Point at arclength fraction u in [0,1) of the closed ring.
inline Point along_boundary(const Ring& r, double u) {
    double total = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const Point& a = r[i];
        const Point& b = r[(i + 1) % r.size()];
        total += std::hypot(b.x - a.x, b.y - a.y);
    }
    double s = u * total;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const Point& a = r[i];
        const Point& b = r[(i + 1) % r.size()];
        const double l = std::hypot(b.x - a.x, b.y - a.y);
        if (s <= l || i + 1 == r.size()) {
            const double f = l > 0.0 ? std::min(s / l, 1.0) : 0.0;
            return {a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)};
        }
        s -= l;
    }
    return r.front();
}

/// Uniform point in a convex ring via fan triangles weighted by area.
inline Point sample_inside(const Ring& r, std::mt19937_64& rng) {
    std::vector<double> w;
    for (std::size_t i = 1; i + 1 < r.size(); ++i) w.push_back(std::abs(cross3(r[0], r[i], r[i + 1])));
    std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
    const std::size_t i = pick(rng) + 1;
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double a = u01(rng);
    double b = u01(rng);
    if (a + b > 1.0) {
        a = 1.0 - a;
        b = 1.0 - b;
    }
    const Point& o = r[0];
    return {o.x + a * (r[i].x - o.x) + b * (r[i + 1].x - o.x), o.y + a * (r[i].y - o.y) + b * (r[i + 1].y - o.y)};
}

/// n points on a random rotated ellipse: strictly convex by construction.
inline Ring random_ellipse_polygon(std::mt19937_64& rng, int n, double scale = 1.0) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double ax = scale * (0.3 + u01(rng));
    const double ay = scale * (0.3 + u01(rng));
    const double rot = 2.0 * std::numbers::pi * u01(rng);
    std::vector<double> ang(static_cast<std::size_t>(n));
    for (auto& a : ang) a = 2.0 * std::numbers::pi * u01(rng);
    std::sort(ang.begin(), ang.end());
    Ring r;
    for (double a : ang) {
        const double x = ax * std::cos(a);
        const double y = ay * std::sin(a);
        r.push_back({x * std::cos(rot) - y * std::sin(rot), x * std::sin(rot) + y * std::cos(rot)});
    }
    return r;
}

/// Valtr's method: random convex polygon with n vertices (collinear triples
/// are possible in principle and get canonicalized away).
inline Ring random_valtr_polygon(std::mt19937_64& rng, int n, double scale = 1.0) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    auto chain = [&](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        const double lo = v.front();
        const double hi = v.back();
        std::vector<double> out;
        double l1 = lo;
        double l2 = lo;
        for (std::size_t i = 1; i + 1 < v.size(); ++i) {
            if (u01(rng) < 0.5) {
                out.push_back(v[i] - l1);
                l1 = v[i];
            } else {
                out.push_back(l2 - v[i]);
                l2 = v[i];
            }
        }
        out.push_back(hi - l1);
        out.push_back(l2 - hi);
        return out;
    };
    std::vector<double> xs(static_cast<std::size_t>(n)), ys(static_cast<std::size_t>(n));
    for (auto& x : xs) x = u01(rng);
    for (auto& y : ys) y = u01(rng);
    auto dx = chain(xs);
    auto dy = chain(ys);
    std::shuffle(dy.begin(), dy.end(), rng);
    std::vector<Point> vec;
    for (std::size_t i = 0; i < dx.size(); ++i) vec.push_back({dx[i], dy[i]});
    std::sort(vec.begin(), vec.end(), [](const Point& a, const Point& b) {
        return std::atan2(a.y, a.x) < std::atan2(b.y, b.x);
    });
    Ring r;
    Point p{0.0, 0.0};
    double minx = 0.0, miny = 0.0, maxx = 0.0, maxy = 0.0;
    for (const auto& v : vec) {
        r.push_back(p);
        p = {p.x + v.x, p.y + v.y};
        minx = std::min(minx, p.x);
        miny = std::min(miny, p.y);
        maxx = std::max(maxx, p.x);
        maxy = std::max(maxy, p.y);
    }
    const double s = scale * 2.0 / std::max(maxx - minx, maxy - miny);
    const Point c{(minx + maxx) / 2.0, (miny + maxy) / 2.0};
    for (auto& q : r) q = {(q.x - c.x) * s, (q.y - c.y) * s};
    return r;
}

inline polymatch::ConvexPolygon random_convex(std::mt19937_64& rng, int n, double scale = 1.0) {
    for (;;) {
        Ring r = (rng() & 1U) ? random_ellipse_polygon(rng, n, scale) : random_valtr_polygon(rng, n, scale);
        try {
            polymatch::ConvexPolygon c(r);
            if (c.size() >= 3) return c;
        } catch (const polymatch::GeometryError&) {
        }
    }
}

// Fixtures. All rings are counterclockwise.

inline Ring unit_square() { return {{0, 0}, {1, 0}, {1, 1}, {0, 1}}; }

/// [0,2]x[0,1] ∪ [0,1]x[1,2]
inline Ring l_shape() { return {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}; }

/// [1,2]x[0,3] ∪ [0,3]x[1,2]
inline Ring plus_sign() {
    return {{1, 0}, {2, 0}, {2, 1}, {3, 1}, {3, 2}, {2, 2}, {2, 3}, {1, 3}, {1, 2}, {0, 2}, {0, 1}, {1, 1}};
}

/// [0,3]^2 minus the slot [1,2]x[1,3]
inline Ring u_shape() { return {{0, 0}, {3, 0}, {3, 3}, {2, 3}, {2, 1}, {1, 1}, {1, 3}, {0, 3}}; }

/// Four steps descending to the right; area 10.
inline Ring staircase() {
    return {{0, 0}, {4, 0}, {4, 1}, {3, 1}, {3, 2}, {2, 2}, {2, 3}, {1, 3}, {1, 4}, {0, 4}};
}

struct Fixture {
    const char* name;
    Ring ring;
    double area;
    int notches;
};

inline std::vector<Fixture> fixtures() {
    return {{"L", l_shape(), 3.0, 1}, {"plus", plus_sign(), 5.0, 4}, {"U", u_shape(), 7.0, 2},
            {"staircase", staircase(), 10.0, 3}};
}

}  // namespace testkit
