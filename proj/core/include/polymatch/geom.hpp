#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polymatch {

/// Absolute coordinate tolerance used by containment and equality predicates.
inline constexpr double kTau = 1e-9;

/// Input violates a type invariant (non-simple ring, singular map, ...).
class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its documented domain.
class PreconditionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct Point {
    double x = 0.0;
    double y = 0.0;

    constexpr Point& operator+=(const Point& o) { x += o.x; y += o.y; return *this; }
    constexpr Point& operator-=(const Point& o) { x -= o.x; y -= o.y; return *this; }
    friend constexpr Point operator+(Point a, const Point& b) { return a += b; }
    friend constexpr Point operator-(Point a, const Point& b) { return a -= b; }
    friend constexpr Point operator-(const Point& a) { return {-a.x, -a.y}; }
    friend constexpr Point operator*(double s, const Point& a) { return {s * a.x, s * a.y}; }
    friend constexpr Point operator*(const Point& a, double s) { return {s * a.x, s * a.y}; }
    friend constexpr Point operator/(const Point& a, double s) { return {a.x / s, a.y / s}; }
    friend constexpr bool operator==(const Point&, const Point&) = default;
};

constexpr double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Point& a) { return std::hypot(a.x, a.y); }
inline double distance(const Point& a, const Point& b) { return norm(a - b); }
constexpr Point perp(const Point& a) { return {-a.y, a.x}; }

/// Twice the signed area of triangle abc; positive when counterclockwise.
constexpr double orient(const Point& a, const Point& b, const Point& c) {
    return cross(b - a, c - a);
}

/// Sign of orient(a, b, c) computed exactly (floating filter with exact fallback).
int orient_sign(const Point& a, const Point& b, const Point& c);

bool is_finite(const Point& p);

struct Segment {
    Point a;
    Point b;

    Segment() = default;
    Segment(Point a_, Point b_);
};

/// Distance from p to the closed segment ab.
double point_segment_distance(const Point& p, const Point& a, const Point& b);

/// Counterclockwise strictly convex polygon with at least three vertices.
class ConvexPolygon {
public:
    ConvexPolygon() = default;

    /// Canonicalizes (drops duplicate and collinear vertices within tol,
    /// enforces ccw) and validates convexity. Throws GeometryError on failure.
    explicit ConvexPolygon(std::vector<Point> vertices, double tol = kTau);

    /// Convex hull of an arbitrary point cloud. Throws if the hull is degenerate.
    static ConvexPolygon hull_of(std::span<const Point> points, double tol = kTau);

    /// Axis-aligned rectangle [x0,x1] x [y0,y1].
    static ConvexPolygon box(double x0, double y0, double x1, double y1);

    const std::vector<Point>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    const Point& operator[](std::size_t i) const { return vertices_[i]; }
    /// Vertex i taken cyclically.
    const Point& at(std::ptrdiff_t i) const;

    bool contains(const Point& p, double tol = kTau) const;
    ConvexPolygon translated(const Point& t) const;
    ConvexPolygon scaled(double s) const;
    /// Point reflection through the origin.
    ConvexPolygon reflected() const;

private:
    struct Trusted {};
    ConvexPolygon(std::vector<Point> vertices, Trusted) : vertices_(std::move(vertices)) {}

    std::vector<Point> vertices_;
};

/// Counterclockwise simple ring plus an optional convex decomposition.
class SimplePolygon {
public:
    SimplePolygon() = default;
    explicit SimplePolygon(std::vector<Point> ring);
    SimplePolygon(std::vector<Point> ring, std::vector<ConvexPolygon> parts);

    const std::vector<Point>& ring() const { return ring_; }
    const std::optional<std::vector<ConvexPolygon>>& parts() const { return parts_; }
    bool has_parts() const { return parts_.has_value(); }
    void set_parts(std::vector<ConvexPolygon> parts);

private:
    std::vector<Point> ring_;
    std::optional<std::vector<ConvexPolygon>> parts_;
};

/// Removes repeated and collinear-consecutive vertices from a closed ring.
std::vector<Point> canonicalize_ring(std::vector<Point> ring, double tol = kTau);

double signed_area(std::span<const Point> ring);
double area(std::span<const Point> ring);
double area(const ConvexPolygon& poly);
double area(const SimplePolygon& poly);
double perimeter(std::span<const Point> ring);
double perimeter(const ConvexPolygon& poly);
Point centroid(std::span<const Point> ring);

/// True if no two non-adjacent edges of the ring touch.
bool is_simple_ring(std::span<const Point> ring);

bool point_in_ring(const Point& p, std::span<const Point> ring);

struct BoundingBox {
    double min_x = 0.0;
    double min_y = 0.0;
    double max_x = 0.0;
    double max_y = 0.0;

    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
};

BoundingBox bounding_box(std::span<const Point> points);

struct WidthDiameter {
    double width = 0.0;
    double diameter = 0.0;
    /// Unit normal of the pair of parallel support lines realizing the width.
    Point width_direction;
    /// Index of the polygon edge lying on one of the width support lines.
    std::size_t width_edge = 0;
    /// Index of the vertex on the opposite support line.
    std::size_t width_vertex = 0;
    std::pair<Point, Point> diameter_pair;
};

/// Width and diameter by rotating calipers.
WidthDiameter width_and_diameter(const ConvexPolygon& poly);

/// Which polygon an edge line of a clipped overlap belongs to.
enum class Source : unsigned char { X, Y };

/// Provenance of an overlap vertex.
struct VertexTag {
    enum class Kind : unsigned char { XVertex, YVertex, EdgeEdge };
    Kind kind = Kind::XVertex;
    int x_index = -1;  ///< vertex index for XVertex, edge index for EdgeEdge
    int y_index = -1;  ///< vertex index for YVertex, edge index for EdgeEdge

    friend bool operator==(const VertexTag&, const VertexTag&) = default;
};

/// Edge line reference: edge i of X runs from X[i] to X[i+1].
struct EdgeRef {
    Source source = Source::X;
    int index = 0;
};

/// X ∩ (t + Y) with per-vertex provenance. Vertex i is the intersection of the
/// supporting lines lines[i].first and lines[i].second.
struct ClipResult {
    std::vector<Point> vertices;
    std::vector<std::pair<EdgeRef, EdgeRef>> lines;

    bool empty() const { return vertices.size() < 3; }
    VertexTag tag(std::size_t i) const;
    double area() const;
};

/// Intersection of X with the translate t + Y. Empty when the overlap has no area.
ClipResult clip_convex(const ConvexPolygon& x, const ConvexPolygon& y, const Point& t = {});

/// X ∩ Y as a polygon, or nullopt when the intersection has zero measure.
std::optional<ConvexPolygon> convex_intersection(const ConvexPolygon& x, const ConvexPolygon& y);

/// Area of X ∩ (t + Y).
double overlap_area(const ConvexPolygon& x, const ConvexPolygon& y, const Point& t);

/// p -> linear * p + offset.
class AffineMap {
public:
    AffineMap();  // identity
    AffineMap(std::array<double, 4> linear, Point offset);

    static AffineMap translation(const Point& t);
    static AffineMap scaling(double s);

    Point apply(const Point& p) const;
    Point apply_linear(const Point& v) const;
    double determinant() const;
    AffineMap inverse() const;
    /// this ∘ other
    AffineMap compose(const AffineMap& other) const;

    const std::array<double, 4>& linear() const { return linear_; }
    const Point& offset() const { return offset_; }

private:
    std::array<double, 4> linear_;  // row-major a b / c d
    Point offset_;
};

ConvexPolygon apply_affine(const AffineMap& m, const ConvexPolygon& poly);
SimplePolygon apply_affine(const AffineMap& m, const SimplePolygon& poly);
AffineMap invert_affine(const AffineMap& m);

/// Radius and center of the largest disk inside poly, by a 3-variable LP.
struct InscribedDisk {
    Point center;
    double radius = 0.0;
};
InscribedDisk inscribed_disk(const ConvexPolygon& poly);
double inscribed_disk_radius(const ConvexPolygon& poly);

/// True if every vertex of inner lies in outer within tol.
bool contains_polygon(const ConvexPolygon& outer, std::span<const Point> inner, double tol = kTau);

/// Euclidean distance from p to poly (0 inside).
double distance_to_convex(const Point& p, const ConvexPolygon& poly);

}  // namespace polymatch
