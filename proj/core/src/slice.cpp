#include <algorithm>
#include <cmath>
#include <list>
#include <optional>

#include "polymatch/overlap.hpp"

namespace polymatch {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Tracer {
    const ConvexPolygon& x;
    const ConvexPolygon& y;
    double alpha;
    Point seed;
    double reach;  // beyond this distance the overlap vanishes
    std::optional<Quadratic2> face;

    double f(const Point& t) const { return overlap_area(x, y, t); }

    double bisect(const Point& u) const {
        double lo = 0.0;
        double hi = reach;
        const double stop = 1e-15 * (1.0 + reach);
        for (int it = 0; it < 200 && hi - lo > stop; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (f(seed + mid * u) >= alpha) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return lo;
    }

    // Root of the cached face quadratic along the ray, accepted only when a
    // direct evaluation confirms it.
    std::optional<double> from_face(const Point& u, double guess) const {
        if (!face) return std::nullopt;
        const Quadratic2& q = *face;
        const Point p = seed;
        const double aa = q.a * u.x * u.x + q.b * u.x * u.y + q.c * u.y * u.y;
        const double bb = (2.0 * q.a * p.x + q.b * p.y + q.d) * u.x + (2.0 * q.c * p.y + q.b * p.x + q.e) * u.y;
        const double cc = q(p) - alpha;
        std::optional<double> r;
        if (std::abs(aa) < 1e-300) {
            if (bb != 0.0) r = -cc / bb;
        } else {
            const double disc = bb * bb - 4.0 * aa * cc;
            if (disc >= 0.0) {
                const double sq = std::sqrt(disc);
                const double r1 = (-bb + sq) / (2.0 * aa);
                const double r2 = (-bb - sq) / (2.0 * aa);
                for (double cand : {r1, r2}) {
                    if (cand > 0.0 && (!r || std::abs(cand - guess) < std::abs(*r - guess))) r = cand;
                }
            }
        }
        if (!r || !(*r > 0.0) || *r > reach) return std::nullopt;
        const double tol = 1e-10 * alpha;
        const double here = f(seed + *r * u);
        if (std::abs(here - alpha) > tol) return std::nullopt;
        // The level must be crossed downward at r.
        const double probe = 1e-7 * *r;
        if (f(seed + (*r + probe) * u) > here + tol) return std::nullopt;
        return r;
    }

    Point boundary(double theta, double guess) {
        const Point u{std::cos(theta), std::sin(theta)};
        if (auto r = from_face(u, guess)) return seed + *r * u;
        const double r = bisect(u);
        if (r > 0.0) face = face_quadratic_unchecked(x, y, seed + (0.999999 * r) * u);
        return seed + r * u;
    }
};

}  // namespace

Slice compute_slice(const ConvexPolygon& x, const ConvexPolygon& y, double alpha, const Point& seed) {
    if (!(alpha > 0.0)) throw PreconditionError("slice level must be positive");
    if (overlap_area(x, y, seed) < alpha) throw NoSuchSlice("seed lies outside the requested slice");

    const auto bx = bounding_box(x.vertices());
    const auto by = bounding_box(y.vertices());
    const double reach = std::hypot(bx.width() + by.width(), bx.height() + by.height()) +
                         std::hypot(seed.x - (bx.min_x - by.min_x), seed.y - (bx.min_y - by.min_y)) +
                         std::hypot(bx.max_x - by.max_x, bx.max_y - by.max_y);
    Tracer tr{x, y, alpha, seed, reach, std::nullopt};

    struct Sample {
        double theta;
        Point p;
    };
    std::list<Sample> ring;
    constexpr int kInitial = 64;
    double last_r = 0.0;
    for (int i = 0; i < kInitial; ++i) {
        const double th = 2.0 * kPi * i / kInitial;
        const Point p = tr.boundary(th, last_r);
        last_r = distance(p, seed);
        ring.push_back({th, p});
    }

    // Refine chords until the level curve stays within tolerance of every chord.
    const double tol = 5e-7 * alpha;
    auto it = ring.begin();
    int budget = 1 << 16;
    while (it != ring.end() && budget-- > 0) {
        auto nx = std::next(it);
        const bool wrap = nx == ring.end();
        const Sample& b = wrap ? ring.front() : *nx;
        const double th_b = wrap ? b.theta + 2.0 * kPi : b.theta;
        bool ok = th_b - it->theta < 1e-9;
        if (!ok) {
            ok = true;
            for (double s : {0.25, 0.5, 0.75}) {
                const Point m = it->p + s * (b.p - it->p);
                if (tr.f(m) - alpha > tol) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) {
            ++it;
            continue;
        }
        const double th = 0.5 * (it->theta + th_b);
        const Point p = tr.boundary(th, distance(it->p, seed));
        ring.insert(nx, {th, p});
    }

    std::vector<Point> pts;
    pts.reserve(ring.size());
    double scale = 0.0;
    for (const auto& s : ring) {
        pts.push_back(s.p);
        scale = std::max(scale, distance(s.p, seed));
    }
    return {alpha, ConvexPolygon::hull_of(pts, 1e-13 * std::max(scale, 1e-300))};
}

}  // namespace polymatch
