#include "polymatch/geom.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "polymatch/lp.hpp"

namespace polymatch {

namespace {

using Rational = boost::multiprecision::cpp_rational;

int exact_orient_sign(const Point& a, const Point& b, const Point& c) {
    const Rational ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
    const Rational det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

double ring_scale(std::span<const Point> pts) {
    double s = 0.0;
    for (const auto& p : pts) s = std::max({s, std::abs(p.x), std::abs(p.y)});
    return s;
}

bool on_segment_exact(const Point& p, const Point& a, const Point& b) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool segments_touch(const Point& p1, const Point& p2, const Point& q1, const Point& q2) {
    const int d1 = orient_sign(q1, q2, p1);
    const int d2 = orient_sign(q1, q2, p2);
    const int d3 = orient_sign(p1, p2, q1);
    const int d4 = orient_sign(p1, p2, q2);
    if (d1 * d2 < 0 && d3 * d4 < 0) return true;
    if (d1 == 0 && on_segment_exact(p1, q1, q2)) return true;
    if (d2 == 0 && on_segment_exact(p2, q1, q2)) return true;
    if (d3 == 0 && on_segment_exact(q1, p1, p2)) return true;
    if (d4 == 0 && on_segment_exact(q2, p1, p2)) return true;
    return false;
}

// Sutherland-Hodgman clip of X against the half-planes of t + Y, tracking for
// each output vertex the two supporting lines that meet there.
struct ClipVertex {
    Point p;
    EdgeRef in;
    EdgeRef out;
};

template <bool kTrackLines>
void clip_impl(const ConvexPolygon& x, const ConvexPolygon& y, const Point& t,
               std::vector<ClipVertex>& cur, std::vector<ClipVertex>& next) {
    const int nx = static_cast<int>(x.size());
    const int ny = static_cast<int>(y.size());
    cur.clear();
    for (int i = 0; i < nx; ++i) {
        cur.push_back({x[static_cast<std::size_t>(i)], EdgeRef{Source::X, (i + nx - 1) % nx},
                       EdgeRef{Source::X, i}});
    }
    std::vector<double> side;
    for (int j = 0; j < ny && !cur.empty(); ++j) {
        const Point a = y[static_cast<std::size_t>(j)] + t;
        const Point d = y.at(j + 1) - y[static_cast<std::size_t>(j)];
        const EdgeRef line{Source::Y, j};
        const std::size_t n = cur.size();
        side.resize(n);
        bool any_out = false;
        for (std::size_t k = 0; k < n; ++k) {
            side[k] = cross(d, cur[k].p - a);
            any_out |= side[k] < 0.0;
        }
        if (!any_out) continue;
        next.clear();
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t kp = (k + n - 1) % n;
            const std::size_t kn = (k + 1) % n;
            const double s = side[k];
            const double sn = side[kn];
            if (s >= 0.0) {
                ClipVertex v = cur[k];
                if constexpr (kTrackLines) {
                    // A vertex on the clip line turns onto it.
                    if (s == 0.0 && side[kp] < 0.0) v.in = line;
                    if (s == 0.0 && sn < 0.0) v.out = line;
                }
                next.push_back(v);
            }
            if ((s > 0.0 && sn < 0.0) || (s < 0.0 && sn > 0.0)) {
                const double f = s / (s - sn);
                ClipVertex v;
                v.p = cur[k].p + f * (cur[kn].p - cur[k].p);
                if (s > 0.0) {
                    v.in = cur[k].out;
                    v.out = line;
                } else {
                    v.in = line;
                    v.out = cur[k].out;
                }
                next.push_back(v);
            }
        }
        std::swap(cur, next);
    }
}

}  // namespace

int orient_sign(const Point& a, const Point& b, const Point& c) {
    const double l = (b.x - a.x) * (c.y - a.y);
    const double r = (b.y - a.y) * (c.x - a.x);
    const double det = l - r;
    const double bound = 4.0 * std::numeric_limits<double>::epsilon() * (std::abs(l) + std::abs(r));
    if (det > bound) return 1;
    if (-det > bound) return -1;
    return exact_orient_sign(a, b, c);
}

bool is_finite(const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

Segment::Segment(Point a_, Point b_) : a(a_), b(b_) {
    if (a == b) throw GeometryError("segment endpoints coincide");
}

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
    const Point d = b - a;
    const double len2 = dot(d, d);
    if (len2 == 0.0) return distance(p, a);
    const double s = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
    return distance(p, a + s * d);
}

std::vector<Point> canonicalize_ring(std::vector<Point> ring, double tol) {
    for (const auto& p : ring) {
        if (!is_finite(p)) throw GeometryError("non-finite coordinate");
    }
    bool changed = true;
    while (changed && ring.size() >= 3) {
        changed = false;
        std::vector<Point> out;
        out.reserve(ring.size());
        for (const auto& p : ring) {
            if (out.empty() || distance(out.back(), p) > tol) out.push_back(p);
        }
        while (out.size() > 1 && distance(out.front(), out.back()) <= tol) out.pop_back();
        changed |= out.size() != ring.size();
        ring = std::move(out);
        if (ring.size() < 3) break;
        const std::size_t n = ring.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point& a = ring[(i + n - 1) % n];
            const Point& b = ring[i];
            const Point& c = ring[(i + 1) % n];
            const double base = distance(a, c);
            const bool collinear = base > 0.0 ? std::abs(orient(a, b, c)) / base <= tol
                                              : true;
            if (collinear) {
                ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    return ring;
}

ConvexPolygon::ConvexPolygon(std::vector<Point> vertices, double tol) {
    auto ring = canonicalize_ring(std::move(vertices), tol);
    if (ring.size() < 3) throw GeometryError("convex polygon needs at least 3 non-collinear vertices");
    if (signed_area(ring) < 0.0) std::reverse(ring.begin(), ring.end());
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (orient(ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]) <= 0.0) {
            std::ostringstream msg;
            msg << "polygon is not convex at vertex " << i << " (" << ring[i].x << ", "
                << ring[i].y << ")";
            throw GeometryError(msg.str());
        }
    }
    // A ring that winds more than once has all left turns but is not convex.
    double turning = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point e0 = ring[i] - ring[(i + n - 1) % n];
        const Point e1 = ring[(i + 1) % n] - ring[i];
        turning += std::atan2(cross(e0, e1), dot(e0, e1));
    }
    if (turning > 2.0 * M_PI + 1e-6) throw GeometryError("polygon ring winds more than once");
    vertices_ = std::move(ring);
}

ConvexPolygon ConvexPolygon::hull_of(std::span<const Point> points, double tol) {
    std::vector<Point> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(),
              [](const Point& a, const Point& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) throw GeometryError("hull of fewer than 3 distinct points");
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && orient(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        const Point& p = pts[i];
        while (k >= lower && orient(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
        hull[k++] = p;
    }
    hull.resize(k - 1);
    return ConvexPolygon(std::move(hull), tol);
}

ConvexPolygon ConvexPolygon::box(double x0, double y0, double x1, double y1) {
    return ConvexPolygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

const Point& ConvexPolygon::at(std::ptrdiff_t i) const {
    const auto n = static_cast<std::ptrdiff_t>(vertices_.size());
    return vertices_[static_cast<std::size_t>(((i % n) + n) % n)];
}

bool ConvexPolygon::contains(const Point& p, double tol) const {
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = vertices_[i];
        const Point& b = vertices_[(i + 1) % n];
        const Point d = b - a;
        if (cross(d, p - a) < -tol * norm(d)) return false;
    }
    return true;
}

ConvexPolygon ConvexPolygon::translated(const Point& t) const {
    std::vector<Point> v = vertices_;
    for (auto& p : v) p += t;
    return ConvexPolygon(std::move(v), Trusted{});
}

ConvexPolygon ConvexPolygon::scaled(double s) const {
    if (!(s > 0.0)) throw GeometryError("scale factor must be positive");
    std::vector<Point> v = vertices_;
    for (auto& p : v) p = s * p;
    return ConvexPolygon(std::move(v), Trusted{});
}

ConvexPolygon ConvexPolygon::reflected() const {
    std::vector<Point> v = vertices_;
    for (auto& p : v) p = -p;
    return ConvexPolygon(std::move(v), Trusted{});
}

SimplePolygon::SimplePolygon(std::vector<Point> ring) {
    ring = canonicalize_ring(std::move(ring));
    if (ring.size() < 3) throw GeometryError("polygon ring needs at least 3 vertices");
    if (signed_area(ring) < 0.0) std::reverse(ring.begin(), ring.end());
    if (!is_simple_ring(ring)) throw GeometryError("polygon ring is not simple");
    ring_ = std::move(ring);
}

SimplePolygon::SimplePolygon(std::vector<Point> ring, std::vector<ConvexPolygon> parts)
    : SimplePolygon(std::move(ring)) {
    set_parts(std::move(parts));
}

void SimplePolygon::set_parts(std::vector<ConvexPolygon> parts) {
    if (parts.empty()) throw GeometryError("decomposition has no parts");
    const double ring_area = area(ring_);
    double sum = 0.0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (const auto& v : parts[i].vertices()) {
            bool near_boundary = false;
            const std::size_t n = ring_.size();
            for (std::size_t e = 0; e < n && !near_boundary; ++e) {
                near_boundary = point_segment_distance(v, ring_[e], ring_[(e + 1) % n]) <= 1e-7;
            }
            if (!near_boundary && !point_in_ring(v, ring_)) {
                std::ostringstream msg;
                msg << "part " << i << " vertex (" << v.x << ", " << v.y
                    << ") lies outside the polygon ring";
                throw GeometryError(msg.str());
            }
        }
        sum += area(parts[i]);
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
            const double ov = overlap_area(parts[i], parts[j], {});
            if (ov > 1e-9 * std::min(area(parts[i]), area(parts[j]))) {
                std::ostringstream msg;
                msg << "parts " << i << " and " << j << " overlap with area " << ov;
                throw GeometryError(msg.str());
            }
        }
    }
    if (std::abs(sum - ring_area) > 1e-9 * ring_area) {
        std::ostringstream msg;
        msg << "parts cover area " << sum << " but ring has area " << ring_area
            << " (missing or excess region of area " << std::abs(sum - ring_area) << ")";
        throw GeometryError(msg.str());
    }
    parts_ = std::move(parts);
}

double signed_area(std::span<const Point> ring) {
    const std::size_t n = ring.size();
    if (n < 3) return 0.0;
    // Shoelace relative to the first vertex for accuracy away from the origin.
    const Point o = ring[0];
    double s = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) s += cross(ring[i] - o, ring[i + 1] - o);
    return 0.5 * s;
}

double area(std::span<const Point> ring) { return std::abs(signed_area(ring)); }
double area(const ConvexPolygon& poly) { return area(poly.vertices()); }
double area(const SimplePolygon& poly) { return area(poly.ring()); }

double perimeter(std::span<const Point> ring) {
    double s = 0.0;
    for (std::size_t i = 0; i < ring.size(); ++i) s += distance(ring[i], ring[(i + 1) % ring.size()]);
    return s;
}

double perimeter(const ConvexPolygon& poly) { return perimeter(poly.vertices()); }

Point centroid(std::span<const Point> ring) {
    const std::size_t n = ring.size();
    const Point o = ring[0];
    double a = 0.0;
    Point c;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const Point p = ring[i] - o;
        const Point q = ring[i + 1] - o;
        const double w = cross(p, q);
        a += w;
        c += w * (p + q);
    }
    if (a == 0.0) {
        Point m;
        for (const auto& p : ring) m += p;
        return m / static_cast<double>(n);
    }
    return o + c / (3.0 * a);
}

bool is_simple_ring(std::span<const Point> ring) {
    const std::size_t n = ring.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = ring[i];
        const Point& b = ring[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
            const Point& c = ring[j];
            const Point& d = ring[(j + 1) % n];
            if (adjacent) {
                // Adjacent edges share one endpoint; they must not fold back.
                const Point& shared = j == i + 1 ? b : a;
                const Point& other_i = j == i + 1 ? a : b;
                const Point& other_j = j == i + 1 ? d : c;
                if (orient_sign(other_i, shared, other_j) == 0 &&
                    dot(other_i - shared, other_j - shared) > 0.0) {
                    return false;
                }
                continue;
            }
            if (segments_touch(a, b, c, d)) return false;
        }
    }
    return true;
}

bool point_in_ring(const Point& p, std::span<const Point> ring) {
    bool inside = false;
    const std::size_t n = ring.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point& a = ring[i];
        const Point& b = ring[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x) inside = !inside;
        }
    }
    return inside;
}

BoundingBox bounding_box(std::span<const Point> points) {
    BoundingBox b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                  -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& p : points) {
        b.min_x = std::min(b.min_x, p.x);
        b.min_y = std::min(b.min_y, p.y);
        b.max_x = std::max(b.max_x, p.x);
        b.max_y = std::max(b.max_y, p.y);
    }
    return b;
}

WidthDiameter width_and_diameter(const ConvexPolygon& poly) {
    const auto& v = poly.vertices();
    const std::size_t n = v.size();
    WidthDiameter out;
    out.width = std::numeric_limits<double>::infinity();
    auto height = [&](std::size_t e, std::size_t k) {
        const Point d = v[(e + 1) % n] - v[e];
        return cross(d, v[k] - v[e]) / norm(d);
    };
    auto consider_pair = [&](std::size_t i, std::size_t j) {
        const double d = distance(v[i], v[j]);
        if (d > out.diameter) {
            out.diameter = d;
            out.diameter_pair = {v[i], v[j]};
        }
    };
    std::size_t k = 1;
    for (std::size_t e = 0; e < n; ++e) {
        if (k == e || k == (e + 1) % n) k = (e + 2) % n;
        for (std::size_t guard = 0; guard < n && height(e, (k + 1) % n) >= height(e, k); ++guard) {
            // Rotating the caliper: every vertex passed is antipodal to edge e's tail.
            consider_pair(e, k);
            k = (k + 1) % n;
        }
        consider_pair(e, k);
        consider_pair((e + 1) % n, k);
        const double h = height(e, k);
        if (h < out.width) {
            out.width = h;
            out.width_edge = e;
            out.width_vertex = k;
            const Point d = v[(e + 1) % n] - v[e];
            out.width_direction = perp(d) / norm(d);
        }
    }
    return out;
}

VertexTag ClipResult::tag(std::size_t i) const {
    const auto& [a, b] = lines[i];
    if (a.source == Source::X && b.source == Source::X) {
        return {VertexTag::Kind::XVertex, b.index, -1};
    }
    if (a.source == Source::Y && b.source == Source::Y) {
        return {VertexTag::Kind::YVertex, -1, b.index};
    }
    const EdgeRef& xe = a.source == Source::X ? a : b;
    const EdgeRef& ye = a.source == Source::Y ? a : b;
    return {VertexTag::Kind::EdgeEdge, xe.index, ye.index};
}

double ClipResult::area() const { return empty() ? 0.0 : polymatch::area(vertices); }

ClipResult clip_convex(const ConvexPolygon& x, const ConvexPolygon& y, const Point& t) {
    thread_local std::vector<ClipVertex> cur, next;
    clip_impl<true>(x, y, t, cur, next);
    ClipResult out;
    // Collapse exact duplicates; keep the incoming line of the first copy and
    // the outgoing line of the last.
    for (const auto& v : cur) {
        if (!out.vertices.empty() && out.vertices.back() == v.p) {
            out.lines.back().second = v.out;
            continue;
        }
        out.vertices.push_back(v.p);
        out.lines.emplace_back(v.in, v.out);
    }
    while (out.vertices.size() > 1 && out.vertices.front() == out.vertices.back()) {
        out.lines.front().first = out.lines.back().first;
        out.vertices.pop_back();
        out.lines.pop_back();
    }
    if (out.vertices.size() < 3 || signed_area(out.vertices) <= 0.0) {
        out.vertices.clear();
        out.lines.clear();
    }
    return out;
}

std::optional<ConvexPolygon> convex_intersection(const ConvexPolygon& x, const ConvexPolygon& y) {
    auto clip = clip_convex(x, y);
    if (clip.empty()) return std::nullopt;
    try {
        return ConvexPolygon(std::move(clip.vertices));
    } catch (const GeometryError&) {
        return std::nullopt;
    }
}

double overlap_area(const ConvexPolygon& x, const ConvexPolygon& y, const Point& t) {
    thread_local std::vector<ClipVertex> cur, next;
    clip_impl<false>(x, y, t, cur, next);
    if (cur.size() < 3) return 0.0;
    const Point o = cur[0].p;
    double s = 0.0;
    for (std::size_t i = 1; i + 1 < cur.size(); ++i) s += cross(cur[i].p - o, cur[i + 1].p - o);
    return std::max(0.0, 0.5 * s);
}

AffineMap::AffineMap() : linear_{1.0, 0.0, 0.0, 1.0}, offset_{} {}

AffineMap::AffineMap(std::array<double, 4> linear, Point offset) : linear_(linear), offset_(offset) {
    const double det = determinant();
    if (!std::isfinite(det) || det == 0.0 || !is_finite(offset)) {
        throw GeometryError("affine map is singular or non-finite");
    }
}

AffineMap AffineMap::translation(const Point& t) { return AffineMap({1.0, 0.0, 0.0, 1.0}, t); }
AffineMap AffineMap::scaling(double s) { return AffineMap({s, 0.0, 0.0, s}, {}); }

Point AffineMap::apply_linear(const Point& v) const {
    return {linear_[0] * v.x + linear_[1] * v.y, linear_[2] * v.x + linear_[3] * v.y};
}

Point AffineMap::apply(const Point& p) const { return apply_linear(p) + offset_; }

double AffineMap::determinant() const { return linear_[0] * linear_[3] - linear_[1] * linear_[2]; }

AffineMap AffineMap::inverse() const {
    const double det = determinant();
    const std::array<double, 4> inv{linear_[3] / det, -linear_[1] / det, -linear_[2] / det,
                                    linear_[0] / det};
    const Point off{-(inv[0] * offset_.x + inv[1] * offset_.y),
                    -(inv[2] * offset_.x + inv[3] * offset_.y)};
    return AffineMap(inv, off);
}

AffineMap AffineMap::compose(const AffineMap& o) const {
    const auto& a = linear_;
    const auto& b = o.linear_;
    return AffineMap({a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                      a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]},
                     apply(o.offset_));
}

ConvexPolygon apply_affine(const AffineMap& m, const ConvexPolygon& poly) {
    std::vector<Point> v;
    v.reserve(poly.size());
    for (const auto& p : poly.vertices()) v.push_back(m.apply(p));
    if (m.determinant() < 0.0) std::reverse(v.begin(), v.end());
    return ConvexPolygon(std::move(v));
}

SimplePolygon apply_affine(const AffineMap& m, const SimplePolygon& poly) {
    std::vector<Point> ring;
    for (const auto& p : poly.ring()) ring.push_back(m.apply(p));
    SimplePolygon out(std::move(ring));
    if (poly.has_parts()) {
        std::vector<ConvexPolygon> parts;
        for (const auto& part : *poly.parts()) parts.push_back(apply_affine(m, part));
        out.set_parts(std::move(parts));
    }
    return out;
}

AffineMap invert_affine(const AffineMap& m) { return m.inverse(); }

InscribedDisk inscribed_disk(const ConvexPolygon& poly) {
    const auto& v = poly.vertices();
    const std::size_t n = v.size();
    // Work relative to the first vertex so the LP is well scaled.
    const Point o = v[0];
    LinearProgram lp;
    lp.objective = {0.0, 0.0, 1.0};
    lp.bound = 4.0 * ring_scale(std::vector<Point>(v.begin(), v.end())) + 4.0 * perimeter(poly) + 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = v[i] - o;
        const Point d = v[(i + 1) % n] - v[i];
        const Point normal = Point{d.y, -d.x} / norm(d);  // outward for ccw
        lp.constraints.push_back({{normal.x, normal.y, 1.0}, dot(normal, a)});
    }
    lp.constraints.push_back({{0.0, 0.0, -1.0}, 0.0});
    const auto sol = solve_lp(lp);
    if (!sol) throw GeometryError("inscribed disk program infeasible");
    return {Point{(*sol)[0], (*sol)[1]} + o, (*sol)[2]};
}

double inscribed_disk_radius(const ConvexPolygon& poly) { return inscribed_disk(poly).radius; }

bool contains_polygon(const ConvexPolygon& outer, std::span<const Point> inner, double tol) {
    return std::all_of(inner.begin(), inner.end(), [&](const Point& p) { return outer.contains(p, tol); });
}

double distance_to_convex(const Point& p, const ConvexPolygon& poly) {
    if (poly.contains(p, 0.0)) return 0.0;
    double d = std::numeric_limits<double>::infinity();
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) d = std::min(d, point_segment_distance(p, poly[i], poly.at(static_cast<std::ptrdiff_t>(i) + 1)));
    return d;
}

}  // namespace polymatch
