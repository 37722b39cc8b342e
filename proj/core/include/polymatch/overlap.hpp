#pragma once

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "polymatch/config.hpp"
#include "polymatch/geom.hpp"

namespace polymatch {

/// f(t) = a tx² + b tx ty + c ty² + d tx + e ty + g
struct Quadratic2 {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0, e = 0.0, g = 0.0;

    static Quadratic2 constant(double v) { return {0.0, 0.0, 0.0, 0.0, 0.0, v}; }

    double operator()(const Point& t) const {
        return (a * t.x + b * t.y + d) * t.x + (c * t.y + e) * t.y + g;
    }
    Quadratic2& operator+=(const Quadratic2& o);
    friend Quadratic2 operator+(Quadratic2 l, const Quadratic2& r) { return l += r; }
    /// q(-t)
    Quadratic2 reflected() const { return {a, b, c, -d, -e, g}; }
};

/// Raised when a query point sits on a boundary where the overlap changes form.
class DegenerateConfiguration : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// The requested level exceeds the overlap at the seed (or the maximum).
class NoSuchSlice : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Exact quadratic of the overlap function on the face containing t0, built
/// from the affine dependence of each overlap vertex on t. Throws
/// DegenerateConfiguration when a vertex of one polygon lies on the other's
/// boundary at t0.
Quadratic2 face_quadratic(const ConvexPolygon& x, const ConvexPolygon& y, const Point& t0);

/// Same as face_quadratic without the degeneracy check; callers guarantee t0
/// is interior to a face.
Quadratic2 face_quadratic_unchecked(const ConvexPolygon& x, const ConvexPolygon& y, const Point& t0);

struct Maximum {
    Point t;
    double value = 0.0;
};

/// Exact maximum of q over a closed convex polygon.
Maximum maximize_quadratic_over_convex(const Quadratic2& q, const ConvexPolygon& face);

/// Maximum of q over the closed region bounded by `outer` (ccw) minus the
/// interiors of `holes`. Candidates: stationary point, edge maxima, vertices.
Maximum maximize_quadratic_over_region(const Quadratic2& q, std::span<const Point> outer,
                                       std::span<const std::vector<Point>> holes = {});

/// Approximate maximum of the overlap function of a convex pair (coarse grid
/// followed by pattern search on the unimodal surface).
Maximum maximize_convex_overlap(const ConvexPolygon& x, const ConvexPolygon& y);

/// Superlevel set {t : overlap(X, t + Y) >= alpha} of a convex pair.
struct Slice {
    double alpha = 0.0;
    ConvexPolygon boundary;
};

/// Traces the alpha-slice starting from a seed inside it. Throws
/// PreconditionError when alpha <= 0 and NoSuchSlice when overlap(seed) < alpha.
Slice compute_slice(const ConvexPolygon& x, const ConvexPolygon& y, double alpha, const Point& seed);

/// (eps, nu, rho)-approximation of t -> overlap(X, t + Y): a set of convex
/// event polygons in translation space plus one quadratic per arrangement face.
class PiecewiseQuadratic {
public:
    enum class Branch : unsigned char { SmallInLarge, SmallInLargeSlices, Incomparable };
    enum class EventKind : unsigned char { GridPoint, VertexInRegion, SliceRing };

    Branch branch() const { return branch_; }
    /// True when built for the swapped pair and evaluated at -t.
    bool negated() const { return negated_; }
    double eps_budget() const { return eps_; }

    const std::vector<ConvexPolygon>& event_polygons() const { return events_; }
    const std::vector<EventKind>& event_kinds() const { return kinds_; }

    /// Quadratic valid on the face of the event arrangement containing t.
    Quadratic2 face_function(const Point& t) const;
    /// psi(t)
    double operator()(const Point& t) const;

    /// Grid points (small-in-large), in the coordinates of the smaller polygon.
    const std::vector<Point>& grid_points() const { return grid_; }
    double cell_area() const { return cell_area_; }
    /// Onion levels (slice variant), increasing.
    const std::vector<double>& levels() const { return levels_; }
    /// Approximating polygons (incomparable branch).
    const ConvexPolygon& x_approx() const { return x_; }
    const ConvexPolygon& y_approx() const { return y_; }

    std::string_view branch_name() const;

private:
    friend PiecewiseQuadratic approx_small_in_large(const ConvexPolygon&, const ConvexPolygon&, double,
                                                    const Config&);
    friend PiecewiseQuadratic approx_small_in_large_slices(const ConvexPolygon&, const ConvexPolygon&,
                                                           double, const Config&);
    friend PiecewiseQuadratic approx_incomparable(const ConvexPolygon&, const ConvexPolygon&, double,
                                                  const Config&);
    friend PiecewiseQuadratic approx_convex_pair(const ConvexPolygon&, const ConvexPolygon&, double,
                                                 const Config&);

    double evaluate_unreflected(const Point& t) const;
    void negate();

    Branch branch_ = Branch::Incomparable;
    bool negated_ = false;
    double eps_ = 0.0;
    std::vector<ConvexPolygon> events_;
    std::vector<EventKind> kinds_;

    // SmallInLarge
    std::vector<Point> grid_;
    ConvexPolygon large_;
    double cell_area_ = 0.0;
    // SmallInLargeSlices: rings_[i] bounds the levels_[i] superlevel set.
    std::vector<ConvexPolygon> rings_;
    std::vector<double> levels_;
    // Incomparable
    ConvexPolygon x_;
    ConvexPolygon y_;
};

/// Grid estimator for ssim(X, Y) < 1: psi(t) = cellArea * |{p in S : t in p - Y}|.
PiecewiseQuadratic approx_small_in_large(const ConvexPolygon& x, const ConvexPolygon& y, double eps,
                                         const Config& cfg = {});

/// Onion of nested slices for ssim(X, Y) < 1.
PiecewiseQuadratic approx_small_in_large_slices(const ConvexPolygon& x, const ConvexPolygon& y,
                                                double eps, const Config& cfg = {});

/// Both polygons approximated simultaneously: psi(t) = overlap(X', t + Y').
PiecewiseQuadratic approx_incomparable(const ConvexPolygon& x, const ConvexPolygon& y, double eps,
                                       const Config& cfg = {});

/// Dispatches on the two scaling similarities.
PiecewiseQuadratic approx_convex_pair(const ConvexPolygon& x, const ConvexPolygon& y, double eps,
                                      const Config& cfg = {});

/// ssim(X, Y) < 1 - kTau: X fits strictly inside a translate of Y.
bool fits_inside(const ConvexPolygon& x, const ConvexPolygon& y, const Config& cfg = {});

}  // namespace polymatch
