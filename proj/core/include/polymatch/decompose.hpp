#pragma once

#include <vector>

#include "polymatch/geom.hpp"

namespace polymatch {

struct Decomposition {
    std::vector<ConvexPolygon> parts;
    std::vector<Point> source_ring;

    std::size_t size() const { return parts.size(); }
};

/// Interior-disjoint convex parts of a simple polygon. Caller-supplied parts
/// (already validated by SimplePolygon) are returned unchanged; otherwise the
/// ring is ear-clipped and triangles are merged across inessential diagonals,
/// keeping the smallest result over several triangulations.
Decomposition decompose(const SimplePolygon& p);

/// Number of reflex vertices.
int count_notches(const SimplePolygon& p);

/// p with its parts filled in by decompose() when absent.
SimplePolygon with_parts(SimplePolygon p);

}  // namespace polymatch
