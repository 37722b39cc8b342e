#pragma once

#include <span>
#include <vector>

#include "polymatch/geom.hpp"

namespace polymatch {

/// Planar subdivision induced by the boundaries of a set of convex polygons.
/// Face 0 is the unbounded face.
class Arrangement {
public:
    struct HalfEdge {
        int origin = -1;
        int twin = -1;
        int next = -1;
        int face = -1;  ///< face on the left
    };
    struct Face {
        int outer = -1;          ///< half-edge on the outer boundary (-1 for face 0)
        std::vector<int> holes;  ///< one half-edge per inner boundary
        Point representative;    ///< interior point (bounded faces only)
    };

    const std::vector<Point>& vertices() const { return vertices_; }
    const std::vector<HalfEdge>& half_edges() const { return half_edges_; }
    const std::vector<Face>& faces() const { return faces_; }
    std::size_t edge_count() const { return half_edges_.size() / 2; }
    std::size_t bounded_face_count() const { return faces_.empty() ? 0 : faces_.size() - 1; }

    /// Vertices of the cycle through half-edge h.
    std::vector<Point> cycle(int h) const;
    std::vector<std::vector<Point>> holes(int face) const;

    /// Exact test: p strictly inside face f (not on its boundary).
    bool face_contains(int face, const Point& p) const;

    /// Faces on either side of the edge carried by half-edge h.
    int smaller_adjacent_face(int h) const;
    /// Smallest id among faces incident to vertex v.
    int smallest_face_at_vertex(int v) const;

    /// Snapping resolution applied to every input coordinate and crossing.
    double resolution() const { return resolution_; }

private:
    friend Arrangement build_arrangement(std::span<const ConvexPolygon> polygons);

    std::vector<Point> vertices_;
    std::vector<HalfEdge> half_edges_;
    std::vector<int> vertex_edge_;  // one outgoing half-edge per vertex
    std::vector<Face> faces_;
    double resolution_ = 0.0;
};

/// Overlay of all polygon boundaries: edges are split at every crossing and
/// collinear overlaps are merged.
Arrangement build_arrangement(std::span<const ConvexPolygon> polygons);

}  // namespace polymatch
