#include "polymatch/point_location.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace polymatch {

namespace {

bool lex_less(const Point& a, const Point& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

bool on_closed_segment(const Point& p, const Point& a, const Point& b) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

}  // namespace

TrapezoidalMap::TrapezoidalMap(const Arrangement& arr, std::uint64_t seed) : arr_(&arr) {
    const auto& he = arr.half_edges();
    const auto& vs = arr.vertices();
    segs_.reserve(arr.edge_count());
    for (std::size_t k = 0; k < arr.edge_count(); ++k) {
        const auto& h = he[2 * k];
        const auto& t = he[2 * k + 1];
        Seg s{vs[static_cast<std::size_t>(h.origin)], vs[static_cast<std::size_t>(t.origin)], h.origin, t.origin,
              h.face, t.face};
        if (lex_less(s.q, s.p)) {
            std::swap(s.p, s.q);
            std::swap(s.vp, s.vq);
            std::swap(s.above, s.below);
        }
        segs_.push_back(s);
    }
    add_trap({});
    nodes_.push_back({Node::Kind::Leaf, 0, -1, -1});
    traps_[0].node = 0;

    std::vector<int> order(segs_.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    for (int s : order) insert(s);
}

int TrapezoidalMap::add_trap(const Trap& t) {
    traps_.push_back(t);
    ++live_traps_;
    return static_cast<int>(traps_.size()) - 1;
}

int TrapezoidalMap::add_node(Node n) {
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size()) - 1;
}

int TrapezoidalMap::leaf_of(int trap) {
    auto& t = traps_[static_cast<std::size_t>(trap)];
    if (t.node < 0) t.node = add_node({Node::Kind::Leaf, trap, -1, -1});
    return t.node;
}

// Trapezoid crossed by segment `seg` just right of the wall through p.
int TrapezoidalMap::locate_along(const Point& p, int seg) const {
    const Seg& s = segs_[static_cast<std::size_t>(seg)];
    int n = 0;
    while (nodes_[static_cast<std::size_t>(n)].kind != Node::Kind::Leaf) {
        const Node& node = nodes_[static_cast<std::size_t>(n)];
        if (node.kind == Node::Kind::X) {
            const Point& v = arr_->vertices()[static_cast<std::size_t>(node.index)];
            n = lex_less(p, v) ? node.left : node.right;
        } else {
            // Non-crossing segments sharing an x-range are totally ordered.
            const Seg& t = segs_[static_cast<std::size_t>(node.index)];
            bool above;
            if (!lex_less(s.p, t.p) && !lex_less(t.q, s.p)) {
                int o = orient_sign(t.p, t.q, s.p);
                if (o == 0) o = orient_sign(t.p, t.q, s.q);
                above = o > 0;
            } else {
                int o = orient_sign(s.p, s.q, t.p);
                if (o == 0) o = orient_sign(s.p, s.q, t.q);
                above = o < 0;
            }
            n = above ? node.left : node.right;
        }
    }
    return nodes_[static_cast<std::size_t>(n)].index;
}

void TrapezoidalMap::insert(int si) {
    const Seg s = segs_[static_cast<std::size_t>(si)];
    std::vector<int> cross;
    cross.push_back(locate_along(s.p, si));
    while (true) {
        const Trap& d = traps_[static_cast<std::size_t>(cross.back())];
        if (d.right_inf || !lex_less(d.rightp, s.q)) break;
        cross.push_back(locate_along(d.rightp, si));
    }

    const Trap first = traps_[static_cast<std::size_t>(cross.front())];
    const Trap last = traps_[static_cast<std::size_t>(cross.back())];
    const bool has_a = first.left_inf || first.leftp != s.p;
    const bool has_b = last.right_inf || last.rightp != s.q;

    // Pieces above and below s; a wall at rightp survives only on the side of
    // s that contains rightp.
    const std::size_t k = cross.size();
    std::vector<int> upper(k), lower(k);
    for (std::size_t j = 0; j < k; ++j) {
        const Trap d = traps_[static_cast<std::size_t>(cross[j])];
        const bool start_upper =
            j == 0 || orient_sign(s.p, s.q, traps_[static_cast<std::size_t>(cross[j - 1])].rightp) > 0;
        const bool start_lower =
            j == 0 || orient_sign(s.p, s.q, traps_[static_cast<std::size_t>(cross[j - 1])].rightp) < 0;
        const Point left = j == 0 ? s.p : traps_[static_cast<std::size_t>(cross[j - 1])].rightp;
        if (start_upper) {
            Trap u;
            u.top = d.top;
            u.bottom = si;
            u.leftp = left;
            u.left_inf = false;
            upper[j] = add_trap(u);
        } else {
            upper[j] = upper[j - 1];
        }
        if (start_lower) {
            Trap l;
            l.top = si;
            l.bottom = d.bottom;
            l.leftp = left;
            l.left_inf = false;
            lower[j] = add_trap(l);
        } else {
            lower[j] = lower[j - 1];
        }
        // Provisional right end; overwritten until the piece is closed.
        for (int idx : {upper[j], lower[j]}) {
            auto& t = traps_[static_cast<std::size_t>(idx)];
            t.rightp = j + 1 < k ? d.rightp : s.q;
            t.right_inf = false;
        }
    }

    int a = -1;
    int b = -1;
    if (has_a) {
        Trap t;
        t.top = first.top;
        t.bottom = first.bottom;
        t.leftp = first.leftp;
        t.left_inf = first.left_inf;
        t.rightp = s.p;
        t.right_inf = false;
        a = add_trap(t);
    }
    if (has_b) {
        Trap t;
        t.top = last.top;
        t.bottom = last.bottom;
        t.leftp = s.q;
        t.left_inf = false;
        t.rightp = last.rightp;
        t.right_inf = last.right_inf;
        b = add_trap(t);
    }

    // Replace each crossed leaf in place so every parent sees the new subtree.
    for (std::size_t j = 0; j < k; ++j) {
        const int old_leaf = traps_[static_cast<std::size_t>(cross[j])].node;
        --live_traps_;
        const int ylo = leaf_of(upper[j]);
        const int yhi = leaf_of(lower[j]);
        Node ynode{Node::Kind::Y, si, ylo, yhi};
        Node top = ynode;
        if (j + 1 == k && has_b) {
            const int yn = add_node(ynode);
            top = Node{Node::Kind::X, s.vq, yn, leaf_of(b)};
        }
        if (j == 0 && has_a) {
            const int inner = add_node(top);
            top = Node{Node::Kind::X, s.vp, leaf_of(a), inner};
        }
        nodes_[static_cast<std::size_t>(old_leaf)] = top;
        traps_[static_cast<std::size_t>(cross[j])].node = -1;
    }
}

int TrapezoidalMap::face_below(int trap) const {
    const Trap& t = traps_[static_cast<std::size_t>(trap)];
    if (t.top >= 0) return segs_[static_cast<std::size_t>(t.top)].below;
    if (t.bottom >= 0) return segs_[static_cast<std::size_t>(t.bottom)].above;
    return 0;
}

int TrapezoidalMap::locate(const Point& p) const {
    int n = 0;
    while (nodes_[static_cast<std::size_t>(n)].kind != Node::Kind::Leaf) {
        const Node& node = nodes_[static_cast<std::size_t>(n)];
        if (node.kind == Node::Kind::X) {
            const Point& v = arr_->vertices()[static_cast<std::size_t>(node.index)];
            if (p == v) return arr_->smallest_face_at_vertex(node.index);
            n = lex_less(p, v) ? node.left : node.right;
        } else {
            const Seg& t = segs_[static_cast<std::size_t>(node.index)];
            const int o = orient_sign(t.p, t.q, p);
            if (o == 0) {
                if (p == t.p) return arr_->smallest_face_at_vertex(t.vp);
                if (p == t.q) return arr_->smallest_face_at_vertex(t.vq);
                return std::min(t.above, t.below);
            }
            n = o > 0 ? node.left : node.right;
        }
    }
    return face_below(nodes_[static_cast<std::size_t>(n)].index);
}

std::size_t TrapezoidalMap::depth() const {
    std::vector<std::size_t> memo(nodes_.size(), 0);
    std::vector<bool> done(nodes_.size(), false);
    // Children are always created before the node that points to them, except
    // for leaves rewritten in place, so resolve iteratively.
    std::vector<std::pair<int, bool>> stack{{0, false}};
    while (!stack.empty()) {
        auto [n, expanded] = stack.back();
        stack.pop_back();
        const Node& node = nodes_[static_cast<std::size_t>(n)];
        if (done[static_cast<std::size_t>(n)]) continue;
        if (node.kind == Node::Kind::Leaf) {
            memo[static_cast<std::size_t>(n)] = 1;
            done[static_cast<std::size_t>(n)] = true;
            continue;
        }
        if (expanded) {
            memo[static_cast<std::size_t>(n)] =
                1 + std::max(memo[static_cast<std::size_t>(node.left)], memo[static_cast<std::size_t>(node.right)]);
            done[static_cast<std::size_t>(n)] = true;
            continue;
        }
        stack.push_back({n, true});
        stack.push_back({node.left, false});
        stack.push_back({node.right, false});
    }
    return memo[0];
}

LinearScanLocator::LinearScanLocator(const Arrangement& arr) : arr_(&arr) {
    const auto& faces = arr.faces();
    outer_.resize(faces.size());
    holes_.resize(faces.size());
    for (std::size_t f = 1; f < faces.size(); ++f) {
        outer_[f] = arr.cycle(faces[f].outer);
        holes_[f] = arr.holes(static_cast<int>(f));
    }
}

namespace {

// Exact winding number; p is known not to lie on the ring.
int winding_number(const std::vector<Point>& ring, const Point& p) {
    int w = 0;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = ring[i];
        const Point& b = ring[(i + 1) % n];
        if (a.y <= p.y) {
            if (b.y > p.y && orient_sign(a, b, p) > 0) ++w;
        } else if (b.y <= p.y && orient_sign(a, b, p) < 0) {
            --w;
        }
    }
    return w;
}

}  // namespace

int LinearScanLocator::locate(const Point& p) const {
    const auto& vs = arr_->vertices();
    for (std::size_t v = 0; v < vs.size(); ++v) {
        if (vs[v] == p) return arr_->smallest_face_at_vertex(static_cast<int>(v));
    }
    const auto& he = arr_->half_edges();
    for (std::size_t h = 0; h < he.size(); h += 2) {
        const Point& a = vs[static_cast<std::size_t>(he[h].origin)];
        const Point& b = vs[static_cast<std::size_t>(he[h + 1].origin)];
        if (orient_sign(a, b, p) == 0 && on_closed_segment(p, a, b)) {
            return arr_->smaller_adjacent_face(static_cast<int>(h));
        }
    }
    for (std::size_t f = 1; f < outer_.size(); ++f) {
        if (winding_number(outer_[f], p) == 0) continue;
        const bool in_hole = std::any_of(holes_[f].begin(), holes_[f].end(),
                                         [&](const std::vector<Point>& h) { return winding_number(h, p) != 0; });
        if (!in_hole) return static_cast<int>(f);
    }
    return 0;
}

}  // namespace polymatch
