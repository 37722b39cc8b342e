#pragma once

#include <cstdint>
#include <vector>

#include "polymatch/arrangement.hpp"

namespace polymatch {

/// Queries on an edge or vertex resolve to the smallest adjacent face id.
class PointLocator {
public:
    virtual ~PointLocator() = default;
    virtual int locate(const Point& p) const = 0;
};

/// Randomized incremental trapezoidal map with its search DAG. Points are
/// ordered lexicographically, which handles vertical edges and shared x.
class TrapezoidalMap final : public PointLocator {
public:
    explicit TrapezoidalMap(const Arrangement& arr, std::uint64_t seed = 0x5eed);
    int locate(const Point& p) const override;

    std::size_t trapezoid_count() const { return live_traps_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t depth() const;

private:
    struct Seg {
        Point p, q;  // p lexicographically before q
        int vp, vq;  // vertex ids
        int above, below;
    };
    struct Trap {
        int top = -1, bottom = -1;
        Point leftp, rightp;
        bool left_inf = true, right_inf = true;
        int node = -1;
    };
    struct Node {
        enum class Kind : unsigned char { X, Y, Leaf } kind = Kind::Leaf;
        int index = -1;  // vertex (X), segment (Y) or trapezoid (Leaf)
        int left = -1;   // X: before; Y: above
        int right = -1;  // X: after; Y: below
    };

    int locate_along(const Point& p, int seg) const;
    void insert(int seg);
    int add_trap(const Trap& t);
    int add_node(Node n);
    int leaf_of(int trap);
    int face_below(int trap) const;

    const Arrangement* arr_;
    std::vector<Seg> segs_;
    std::vector<Trap> traps_;
    std::vector<Node> nodes_;
    std::size_t live_traps_ = 0;
};

/// Reference locator: scans vertices, edges, then faces.
class LinearScanLocator final : public PointLocator {
public:
    explicit LinearScanLocator(const Arrangement& arr);
    int locate(const Point& p) const override;

private:
    const Arrangement* arr_;
    std::vector<std::vector<Point>> outer_;
    std::vector<std::vector<std::vector<Point>>> holes_;
};

}  // namespace polymatch
