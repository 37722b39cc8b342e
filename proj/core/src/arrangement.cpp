#include "polymatch/arrangement.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace polymatch {

namespace {

struct PointHash {
    std::size_t operator()(const Point& p) const {
        const auto hx = std::bit_cast<std::uint64_t>(p.x);
        const auto hy = std::bit_cast<std::uint64_t>(p.y);
        return std::hash<std::uint64_t>{}(hx * 0x9e3779b97f4a7c15ULL ^ hy);
    }
};

struct RawSegment {
    Point a;
    Point b;
    double min_x, max_x, min_y, max_y;
};

bool lex_less(const Point& a, const Point& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

// Parameter of p along segment ab (p assumed on the line).
double param(const RawSegment& s, const Point& p) {
    const Point d = s.b - s.a;
    return dot(p - s.a, d) / dot(d, d);
}

bool on_closed_segment(const Point& p, const Point& a, const Point& b) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

}  // namespace

std::vector<Point> Arrangement::cycle(int h) const {
    std::vector<Point> out;
    int e = h;
    do {
        out.push_back(vertices_[static_cast<std::size_t>(half_edges_[static_cast<std::size_t>(e)].origin)]);
        e = half_edges_[static_cast<std::size_t>(e)].next;
    } while (e != h);
    return out;
}

std::vector<std::vector<Point>> Arrangement::holes(int face) const {
    std::vector<std::vector<Point>> out;
    for (int h : faces_[static_cast<std::size_t>(face)].holes) out.push_back(cycle(h));
    return out;
}

namespace {

// Winding number of an exact-predicate crossing test; 0 when p is on the cycle.
int winding(const std::vector<Point>& ring, const Point& p, bool& on_boundary) {
    int w = 0;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = ring[i];
        const Point& b = ring[(i + 1) % n];
        const int o = orient_sign(a, b, p);
        if (o == 0 && on_closed_segment(p, a, b)) {
            on_boundary = true;
            return 0;
        }
        if (a.y <= p.y) {
            if (b.y > p.y && o > 0) ++w;
        } else if (b.y <= p.y && o < 0) {
            --w;
        }
    }
    return w;
}

}  // namespace

bool Arrangement::face_contains(int face, const Point& p) const {
    const Face& f = faces_[static_cast<std::size_t>(face)];
    bool on = false;
    if (f.outer >= 0) {
        if (winding(cycle(f.outer), p, on) == 0 || on) return false;
    }
    for (int h : f.holes) {
        // Hole cycles run clockwise around the excluded region.
        if (winding(cycle(h), p, on) != 0 || on) return false;
    }
    return true;
}

int Arrangement::smaller_adjacent_face(int h) const {
    const auto& e = half_edges_[static_cast<std::size_t>(h)];
    return std::min(e.face, half_edges_[static_cast<std::size_t>(e.twin)].face);
}

int Arrangement::smallest_face_at_vertex(int v) const {
    const int start = vertex_edge_[static_cast<std::size_t>(v)];
    int best = half_edges_[static_cast<std::size_t>(start)].face;
    int h = start;
    do {
        best = std::min(best, half_edges_[static_cast<std::size_t>(h)].face);
        // Next outgoing half-edge around v.
        h = half_edges_[static_cast<std::size_t>(half_edges_[static_cast<std::size_t>(h)].twin)].next;
    } while (h != start);
    return best;
}

Arrangement build_arrangement(std::span<const ConvexPolygon> polygons) {
    Arrangement arr;
    arr.faces_.push_back({});
    if (polygons.empty()) return arr;

    double scale = 0.0;
    for (const auto& poly : polygons) {
        for (const auto& v : poly.vertices()) scale = std::max({scale, std::abs(v.x), std::abs(v.y)});
    }
    scale = std::max(scale, 1e-300);
    const double res = std::ldexp(1.0, std::ilogb(scale) - 36);
    arr.resolution_ = res;
    // Adding 0.0 folds -0 into +0 so equal points hash equally.
    auto snap = [res](const Point& p) {
        return Point{std::round(p.x / res) * res + 0.0, std::round(p.y / res) * res + 0.0};
    };

    // Snapped boundary segments, deduplicated.
    std::vector<RawSegment> segs;
    {
        std::vector<std::pair<Point, Point>> raw;
        for (const auto& poly : polygons) {
            const std::size_t n = poly.size();
            for (std::size_t i = 0; i < n; ++i) {
                Point a = snap(poly[i]);
                Point b = snap(poly[(i + 1) % n]);
                if (a == b) continue;
                if (lex_less(b, a)) std::swap(a, b);
                raw.emplace_back(a, b);
            }
        }
        std::sort(raw.begin(), raw.end(), [](const auto& l, const auto& r) {
            if (l.first != r.first) return lex_less(l.first, r.first);
            return lex_less(l.second, r.second);
        });
        raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
        segs.reserve(raw.size());
        for (const auto& [a, b] : raw) {
            segs.push_back({a, b, std::min(a.x, b.x), std::max(a.x, b.x), std::min(a.y, b.y), std::max(a.y, b.y)});
        }
    }

    // Split points per segment, from a sweep over x-sorted bounding boxes.
    const std::size_t ns = segs.size();
    std::vector<std::vector<Point>> splits(ns);
    for (std::size_t i = 0; i < ns; ++i) splits[i] = {segs[i].a, segs[i].b};
    {
        std::vector<std::size_t> order(ns);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return segs[l].min_x < segs[r].min_x; });
        std::vector<std::size_t> active;
        for (std::size_t oi = 0; oi < ns; ++oi) {
            const std::size_t i = order[oi];
            const RawSegment& s = segs[i];
            std::erase_if(active, [&](std::size_t j) { return segs[j].max_x < s.min_x; });
            for (std::size_t j : active) {
                const RawSegment& t = segs[j];
                if (t.max_y < s.min_y || s.max_y < t.min_y) continue;
                const int o1 = orient_sign(s.a, s.b, t.a);
                const int o2 = orient_sign(s.a, s.b, t.b);
                const int o3 = orient_sign(t.a, t.b, s.a);
                const int o4 = orient_sign(t.a, t.b, s.b);
                if (o1 == 0 && o2 == 0) {
                    // Collinear: each endpoint inside the other splits it.
                    for (const Point& p : {t.a, t.b}) {
                        if (on_closed_segment(p, s.a, s.b)) splits[i].push_back(p);
                    }
                    for (const Point& p : {s.a, s.b}) {
                        if (on_closed_segment(p, t.a, t.b)) splits[j].push_back(p);
                    }
                    continue;
                }
                if (o1 * o2 > 0 || o3 * o4 > 0) continue;
                if (o1 == 0) {
                    if (on_closed_segment(t.a, s.a, s.b)) splits[i].push_back(t.a);
                    continue;
                }
                if (o2 == 0) {
                    if (on_closed_segment(t.b, s.a, s.b)) splits[i].push_back(t.b);
                    continue;
                }
                if (o3 == 0) {
                    if (on_closed_segment(s.a, t.a, t.b)) splits[j].push_back(s.a);
                    continue;
                }
                if (o4 == 0) {
                    if (on_closed_segment(s.b, t.a, t.b)) splits[j].push_back(s.b);
                    continue;
                }
                const Point ds = s.b - s.a;
                const Point dt = t.b - t.a;
                const double u = std::clamp(cross(t.a - s.a, dt) / cross(ds, dt), 0.0, 1.0);
                const Point p = snap(s.a + u * ds);
                splits[i].push_back(p);
                splits[j].push_back(p);
            }
            active.push_back(i);
        }
    }

    // Vertices and undirected edges.
    std::unordered_map<Point, int, PointHash> vid;
    auto vertex_id = [&](const Point& p) {
        auto [it, inserted] = vid.try_emplace(p, static_cast<int>(arr.vertices_.size()));
        if (inserted) arr.vertices_.push_back(p);
        return it->second;
    };
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < ns; ++i) {
        auto& pts = splits[i];
        const RawSegment& s = segs[i];
        std::sort(pts.begin(), pts.end(), [&](const Point& l, const Point& r) { return param(s, l) < param(s, r); });
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
            int u = vertex_id(pts[k]);
            int v = vertex_id(pts[k + 1]);
            if (u == v) continue;
            if (u > v) std::swap(u, v);
            edges.emplace_back(u, v);
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    // Half-edges; 2k and 2k+1 are twins.
    const std::size_t nv = arr.vertices_.size();
    arr.half_edges_.resize(2 * edges.size());
    std::vector<std::vector<int>> outgoing(nv);
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const auto [u, v] = edges[k];
        const int h = static_cast<int>(2 * k);
        arr.half_edges_[static_cast<std::size_t>(h)] = {u, h + 1, -1, -1};
        arr.half_edges_[static_cast<std::size_t>(h + 1)] = {v, h, -1, -1};
        outgoing[static_cast<std::size_t>(u)].push_back(h);
        outgoing[static_cast<std::size_t>(v)].push_back(h + 1);
    }
    auto dest = [&](int h) {
        return arr.vertices_[static_cast<std::size_t>(arr.half_edges_[static_cast<std::size_t>(arr.half_edges_[static_cast<std::size_t>(h)].twin)].origin)];
    };
    arr.vertex_edge_.assign(nv, -1);
    std::vector<int> slot(arr.half_edges_.size());
    for (std::size_t v = 0; v < nv; ++v) {
        auto& out = outgoing[v];
        const Point o = arr.vertices_[v];
        std::vector<double> ang(out.size());
        std::vector<std::size_t> idx(out.size());
        std::iota(idx.begin(), idx.end(), 0);
        for (std::size_t k = 0; k < out.size(); ++k) {
            const Point d = dest(out[k]) - o;
            ang[k] = std::atan2(d.y, d.x);
        }
        std::sort(idx.begin(), idx.end(), [&](std::size_t l, std::size_t r) { return ang[l] < ang[r]; });
        std::vector<int> sorted;
        for (std::size_t k : idx) sorted.push_back(out[k]);
        out = std::move(sorted);
        for (std::size_t k = 0; k < out.size(); ++k) slot[static_cast<std::size_t>(out[k])] = static_cast<int>(k);
        if (!out.empty()) arr.vertex_edge_[v] = out[0];
    }
    // next(h): at the head of h, turn to the outgoing edge just clockwise of twin(h).
    for (std::size_t h = 0; h < arr.half_edges_.size(); ++h) {
        const int t = arr.half_edges_[h].twin;
        const auto& out = outgoing[static_cast<std::size_t>(arr.half_edges_[static_cast<std::size_t>(t)].origin)];
        const int m = static_cast<int>(out.size());
        const int k = slot[static_cast<std::size_t>(t)];
        arr.half_edges_[h].next = out[static_cast<std::size_t>((k + m - 1) % m)];
    }

    // Cycles: positive area bounds a face from outside, otherwise it is the
    // outer rim of a connected component.
    std::vector<int> cycle_of(arr.half_edges_.size(), -1);
    std::vector<int> cycle_start;
    std::vector<double> cycle_area;
    for (std::size_t h = 0; h < arr.half_edges_.size(); ++h) {
        if (cycle_of[h] >= 0) continue;
        const int c = static_cast<int>(cycle_start.size());
        cycle_start.push_back(static_cast<int>(h));
        double a2 = 0.0;
        int e = static_cast<int>(h);
        const Point base = arr.vertices_[static_cast<std::size_t>(arr.half_edges_[h].origin)];
        do {
            cycle_of[static_cast<std::size_t>(e)] = c;
            const Point p = arr.vertices_[static_cast<std::size_t>(arr.half_edges_[static_cast<std::size_t>(e)].origin)] - base;
            const Point q = dest(e) - base;
            a2 += cross(p, q);
            e = arr.half_edges_[static_cast<std::size_t>(e)].next;
        } while (e != static_cast<int>(h));
        cycle_area.push_back(a2);
    }
    const std::size_t nc = cycle_start.size();
    std::vector<int> face_of_cycle(nc, -1);
    for (std::size_t c = 0; c < nc; ++c) {
        if (cycle_area[c] > 0.0) {
            face_of_cycle[c] = static_cast<int>(arr.faces_.size());
            arr.faces_.push_back({cycle_start[c], {}, {}});
        }
    }
    // Rim cycles: a vertical ray up from the topmost vertex meets the face
    // that encloses the component.
    std::function<int(std::size_t)> resolve = [&](std::size_t c) -> int {
        if (face_of_cycle[c] >= 0) return face_of_cycle[c];
        int top = cycle_start[c];
        {
            int e = top;
            do {
                const Point& p = arr.vertices_[static_cast<std::size_t>(arr.half_edges_[static_cast<std::size_t>(e)].origin)];
                const Point& q = arr.vertices_[static_cast<std::size_t>(arr.half_edges_[static_cast<std::size_t>(top)].origin)];
                if (p.y > q.y || (p.y == q.y && p.x < q.x)) top = e;
                e = arr.half_edges_[static_cast<std::size_t>(e)].next;
            } while (e != cycle_start[c]);
        }
        const Point p = arr.vertices_[static_cast<std::size_t>(arr.half_edges_[static_cast<std::size_t>(top)].origin)];
        int hit = -1;
        double hit_y = 0.0;
        double hit_slope = 0.0;
        for (std::size_t k = 0; k < edges.size(); ++k) {
            Point a = arr.vertices_[static_cast<std::size_t>(edges[k].first)];
            Point b = arr.vertices_[static_cast<std::size_t>(edges[k].second)];
            if (lex_less(b, a)) std::swap(a, b);
            // Ray at x = p.x + 0: half-open in x, vertical edges never hit.
            if (!(a.x <= p.x && p.x < b.x)) continue;
            const double slope = (b.y - a.y) / (b.x - a.x);
            // Edges of this component never pass strictly above its top vertex.
            if (orient_sign(a, b, p) >= 0) continue;
            const double y = a.x == p.x ? a.y : a.y + (p.x - a.x) * slope;
            if (hit < 0 || y < hit_y || (y == hit_y && slope < hit_slope)) {
                hit = static_cast<int>(k);
                hit_y = y;
                hit_slope = slope;
            }
        }
        int face = 0;
        if (hit >= 0) {
            // The half-edge running right to left has the region below it on its left.
            const int h0 = 2 * hit;
            const Point& o = arr.vertices_[static_cast<std::size_t>(arr.half_edges_[static_cast<std::size_t>(h0)].origin)];
            const int below = lex_less(o, dest(h0)) ? h0 + 1 : h0;
            face = resolve(static_cast<std::size_t>(cycle_of[static_cast<std::size_t>(below)]));
        }
        face_of_cycle[c] = face;
        arr.faces_[static_cast<std::size_t>(face)].holes.push_back(cycle_start[c]);
        return face;
    };
    for (std::size_t c = 0; c < nc; ++c) resolve(c);
    for (std::size_t h = 0; h < arr.half_edges_.size(); ++h) {
        arr.half_edges_[h].face = face_of_cycle[static_cast<std::size_t>(cycle_of[h])];
    }

    // Representatives: the vertex centroid when it is safely inside, else the
    // middle of the tallest interior gap on a vertical line through the widest
    // vertex-free slab.
    for (std::size_t f = 1; f < arr.faces_.size(); ++f) {
        auto& face = arr.faces_[f];
        std::vector<Point> ring = arr.cycle(face.outer);
        std::vector<std::vector<Point>> rings{ring};
        for (int h : face.holes) rings.push_back(arr.cycle(h));
        Point c{};
        for (const auto& p : ring) c += p;
        c = c / static_cast<double>(ring.size());
        const auto bb = bounding_box(ring);
        const double clearance = 1e-3 * std::min(bb.width(), bb.height());
        bool good = arr.face_contains(static_cast<int>(f), c);
        for (std::size_t r = 0; good && r < rings.size(); ++r) {
            const auto& g = rings[r];
            for (std::size_t i = 0; good && i < g.size(); ++i) {
                good = point_segment_distance(c, g[i], g[(i + 1) % g.size()]) > clearance;
            }
        }
        if (good) {
            face.representative = c;
            continue;
        }
        std::vector<double> xs;
        for (const auto& g : rings) {
            for (const auto& p : g) xs.push_back(p.x);
        }
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        std::size_t best = 0;
        for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
            if (xs[i + 1] - xs[i] > xs[best + 1] - xs[best]) best = i;
        }
        const double x = 0.5 * (xs[best] + xs[best + 1]);
        std::vector<double> ys;
        for (const auto& g : rings) {
            for (std::size_t i = 0; i < g.size(); ++i) {
                const Point& a = g[i];
                const Point& b = g[(i + 1) % g.size()];
                if ((a.x < x) == (b.x < x)) continue;
                ys.push_back(a.y + (x - a.x) * (b.y - a.y) / (b.x - a.x));
            }
        }
        std::sort(ys.begin(), ys.end());
        Point rep{x, 0.0};
        double span = -1.0;
        for (std::size_t i = 0; i + 1 < ys.size(); i += 2) {
            if (ys[i + 1] - ys[i] > span) {
                span = ys[i + 1] - ys[i];
                rep.y = 0.5 * (ys[i] + ys[i + 1]);
            }
        }
        face.representative = rep;
    }
    return arr;
}

}  // namespace polymatch
