#pragma once

#include <cstdint>

#include "polymatch/config.hpp"
#include "polymatch/geom.hpp"

namespace polymatch {

struct ScalingSimilarity {
    /// Smallest alpha such that a translate of X fits in alpha * Y.
    double alpha = 0.0;
    /// witness + X ⊆ alpha * Y.
    Point witness;
};

/// Solved as a linear program in (alpha, translation) with one constraint per
/// (vertex of X, edge of Y) pair.
ScalingSimilarity scaling_similarity(const ConvexPolygon& x, const ConvexPolygon& y,
                                     std::uint64_t seed = Config{}.lp_seed);

/// anchor + rect ⊆ C ⊆ anchor + 5 rect, with rect a rectangle centered at the origin.
struct RectSandwich {
    ConvexPolygon rect;
    Point anchor;
    /// Unit direction of the rectangle's long side (parallel to the diameter).
    Point axis;
    double half_length = 0.0;
    double half_height = 0.0;
};

/// Rectangle built on the diameter segment uv inside triangle uvw, where w is
/// the vertex farthest from uv.
RectSandwich bounding_rectangle(const ConvexPolygon& c);

/// Inner approximation with O(m) vertices: every point of P lies within
/// width(P)/m of the result. Throws PreconditionError for m < 1.
ConvexPolygon approx_polygon(const ConvexPolygon& p, int m);

struct OverlapRect {
    /// Rectangle centered at the origin; a translate fits in the optimal overlap.
    ConvexPolygon rect;
    RectSandwich frame;
    /// Every overlap X ∩ (t + Y) fits under translation in c_r * rect.
    double c_r = 0.0;
};

/// Constant-factor approximation of the maximum-overlap polygon by a rectangle.
OverlapRect const_approx_by_rect(const ConvexPolygon& x, const ConvexPolygon& y,
                                 const Config& cfg = {});

struct Preprocessed {
    /// Maps 2 * c_r * overlap_rect onto the unit square.
    AffineMap map;
    ConvexPolygon x_approx;  ///< approx_polygon(T(X), N)
    ConvexPolygon y_approx;  ///< approx_polygon(T(Y), N)
    ConvexPolygon x_back;    ///< T^-1(x_approx)
    ConvexPolygon y_back;    ///< T^-1(y_approx)
    ConvexPolygon overlap_rect;
    int slices = 0;  ///< N
};

Preprocessed preprocess(const ConvexPolygon& x, const ConvexPolygon& y, double eps,
                        const Config& cfg = {});

/// ceil(c4 / eps)
int slice_count(double eps, const Config& cfg);

}  // namespace polymatch
