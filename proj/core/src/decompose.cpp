#include "polymatch/decompose.hpp"

#include <algorithm>
#include <list>
#include <map>
#include <numeric>

namespace polymatch {

namespace {

using Cycle = std::vector<int>;

bool inside_triangle(const Point& p, const Point& a, const Point& b, const Point& c) {
    return orient_sign(a, b, p) >= 0 && orient_sign(b, c, p) >= 0 && orient_sign(c, a, p) >= 0;
}

// Ear clipping starting the scan at `start`; `reverse_scan` walks the ring
// backwards when looking for the next ear.
std::vector<Cycle> triangulate(const std::vector<Point>& ring, int start, bool reverse_scan) {
    const int n = static_cast<int>(ring.size());
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::rotate(idx.begin(), idx.begin() + start, idx.end());
    std::vector<Cycle> tris;
    std::size_t pos = 0;
    std::size_t stalls = 0;
    while (idx.size() > 3) {
        const std::size_t m = idx.size();
        const std::size_t i = pos % m;
        const int a = idx[(i + m - 1) % m];
        const int b = idx[i];
        const int c = idx[(i + 1) % m];
        const int turn = orient_sign(ring[a], ring[b], ring[c]);
        bool ear = turn > 0;
        for (std::size_t k = 0; ear && k < m; ++k) {
            const int v = idx[k];
            if (v == a || v == b || v == c) continue;
            if (orient_sign(ring[idx[(k + m - 1) % m]], ring[v], ring[idx[(k + 1) % m]]) > 0) continue;
            if (inside_triangle(ring[v], ring[a], ring[b], ring[c])) ear = false;
        }
        // A straight vertex of the shrinking chain carries no area.
        const bool flat = turn == 0 && stalls >= m;
        if (ear || flat) {
            if (ear) tris.push_back({a, b, c});
            idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(i));
            stalls = 0;
            if (reverse_scan) pos = (i + idx.size() - 1) % idx.size();
            else pos = i % idx.size();
            continue;
        }
        if (++stalls > 2 * m) throw GeometryError("ear clipping failed; ring is not simple");
        pos = reverse_scan ? (i + m - 1) % m : i + 1;
    }
    if (orient_sign(ring[idx[0]], ring[idx[1]], ring[idx[2]]) > 0) tris.push_back({idx[0], idx[1], idx[2]});
    return tris;
}

bool convex_at(const std::vector<Point>& ring, const Cycle& c, std::size_t i) {
    const std::size_t n = c.size();
    return orient_sign(ring[c[(i + n - 1) % n]], ring[c[i]], ring[c[(i + 1) % n]]) >= 0;
}

// Greedy merging of pieces across shared diagonals while both diagonal
// endpoints stay convex.
std::vector<Cycle> merge_pieces(const std::vector<Point>& ring, std::vector<Cycle> pieces, bool reverse_order) {
    const int n = static_cast<int>(ring.size());
    auto boundary_edge = [n](int a, int b) { return (a + 1) % n == b || (b + 1) % n == a; };
    std::vector<bool> alive(pieces.size(), true);
    bool changed = true;
    while (changed) {
        changed = false;
        std::map<std::pair<int, int>, std::size_t> owner;  // directed edge -> piece
        for (std::size_t p = 0; p < pieces.size(); ++p) {
            if (!alive[p]) continue;
            const auto& c = pieces[p];
            for (std::size_t i = 0; i < c.size(); ++i) owner[{c[i], c[(i + 1) % c.size()]}] = p;
        }
        std::vector<std::pair<int, int>> diagonals;
        for (const auto& [e, p] : owner) {
            if (e.first < e.second && !boundary_edge(e.first, e.second) && owner.count({e.second, e.first})) {
                diagonals.push_back(e);
            }
        }
        if (reverse_order) std::reverse(diagonals.begin(), diagonals.end());
        for (const auto& [a, b] : diagonals) {
            const auto ip = owner.find({a, b});
            const auto iq = owner.find({b, a});
            if (ip == owner.end() || iq == owner.end()) continue;
            const std::size_t p = ip->second;
            const std::size_t q = iq->second;
            if (p == q || !alive[p] || !alive[q]) continue;
            const Cycle& cp = pieces[p];
            const Cycle& cq = pieces[q];
            // cp contains a->b; walk cp from b around to a, then cq from a around to b.
            Cycle merged;
            const auto pa = std::find(cp.begin(), cp.end(), a) - cp.begin();
            const auto qb = std::find(cq.begin(), cq.end(), b) - cq.begin();
            const std::ptrdiff_t np = static_cast<std::ptrdiff_t>(cp.size());
            const std::ptrdiff_t nq = static_cast<std::ptrdiff_t>(cq.size());
            for (std::ptrdiff_t k = 1; k <= np; ++k) merged.push_back(cp[static_cast<std::size_t>((pa + k) % np)]);
            for (std::ptrdiff_t k = 2; k < nq; ++k) merged.push_back(cq[static_cast<std::size_t>((qb + k) % nq)]);
            const auto ia = static_cast<std::size_t>(std::find(merged.begin(), merged.end(), a) - merged.begin());
            const auto ib = static_cast<std::size_t>(std::find(merged.begin(), merged.end(), b) - merged.begin());
            if (!convex_at(ring, merged, ia) || !convex_at(ring, merged, ib)) continue;
            pieces[p] = std::move(merged);
            alive[q] = false;
            const auto& c = pieces[p];
            for (std::size_t i = 0; i < c.size(); ++i) owner[{c[i], c[(i + 1) % c.size()]}] = p;
            changed = true;
        }
    }
    std::vector<Cycle> out;
    for (std::size_t p = 0; p < pieces.size(); ++p) {
        if (alive[p]) out.push_back(std::move(pieces[p]));
    }
    return out;
}

}  // namespace

int count_notches(const SimplePolygon& p) {
    const auto& r = p.ring();
    const std::size_t n = r.size();
    int count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (orient_sign(r[(i + n - 1) % n], r[i], r[(i + 1) % n]) < 0) ++count;
    }
    return count;
}

Decomposition decompose(const SimplePolygon& p) {
    Decomposition out;
    out.source_ring = p.ring();
    if (p.has_parts()) {
        out.parts = *p.parts();
        return out;
    }
    const auto& ring = p.ring();
    if (count_notches(p) == 0) {
        out.parts.emplace_back(ring);
        return out;
    }
    const int n = static_cast<int>(ring.size());
    // Each attempt is cubic in n; fewer starting points on large rings.
    const int tries = std::min(n, std::clamp(1024 / n, 4, 24));
    std::vector<Cycle> best;
    for (int s = 0; s < tries; ++s) {
        const int start = static_cast<int>(static_cast<long long>(s) * n / tries);
        for (int variant = 0; variant < 4; ++variant) {
            auto pieces = merge_pieces(ring, triangulate(ring, start, variant & 1), variant & 2);
            if (best.empty() || pieces.size() < best.size()) best = std::move(pieces);
        }
    }
    for (const auto& c : best) {
        std::vector<Point> pts;
        pts.reserve(c.size());
        for (int i : c) pts.push_back(ring[static_cast<std::size_t>(i)]);
        out.parts.emplace_back(std::move(pts));
    }
    return out;
}

SimplePolygon with_parts(SimplePolygon p) {
    if (!p.has_parts()) p.set_parts(decompose(p).parts);
    return p;
}

}  // namespace polymatch
