#pragma once

#include <memory>
#include <string>
#include <vector>

#include "polymatch/arrangement.hpp"
#include "polymatch/config.hpp"
#include "polymatch/overlap.hpp"
#include "polymatch/point_location.hpp"

namespace polymatch {

struct MatchStats {
    double pair_seconds = 0.0;
    double overlay_seconds = 0.0;
    double maximize_seconds = 0.0;
    double locator_seconds = 0.0;
    std::size_t event_polygons = 0;
    std::size_t vertices = 0;
    std::size_t edges = 0;
};

struct MatchResult {
    Point translation;
    double value = 0.0;
    double epsilon = 0.0;
    /// eps / k², with k the larger part count.
    double pair_budget = 0.0;
    std::size_t parts_p = 0;
    std::size_t parts_q = 0;
    std::size_t face_count = 0;
    /// Branch used for each pair, in (i, j) order.
    std::vector<std::string> pair_branches;
    MatchStats stats;
};

/// The overlaid approximation psi = sum of psi_ij with per-face quadratics and
/// a point-location structure.
class QueryStructure {
public:
    QueryStructure(const SimplePolygon& p, const SimplePolygon& q, double eps, const Config& cfg = {});
    ~QueryStructure();
    QueryStructure(QueryStructure&&) noexcept;
    QueryStructure& operator=(QueryStructure&&) noexcept;

    const MatchResult& result() const { return result_; }
    const Arrangement& arrangement() const { return arr_; }
    const std::vector<PiecewiseQuadratic>& pairs() const { return pairs_; }
    const std::vector<ConvexPolygon>& parts_p() const { return parts_p_; }
    const std::vector<ConvexPolygon>& parts_q() const { return parts_q_; }
    const std::vector<Quadratic2>& face_quadratics() const { return face_q_; }

    /// psi(t) through point location: the stored quadratic of t's face.
    double query(const Point& t) const;
    int locate(const Point& t) const;
    /// psi(t) evaluated pair by pair, without the arrangement.
    double direct(const Point& t) const;
    /// Exact overlap of the two decompositions.
    double exact(const Point& t) const;

private:
    std::vector<ConvexPolygon> parts_p_;
    std::vector<ConvexPolygon> parts_q_;
    std::vector<PiecewiseQuadratic> pairs_;
    Arrangement arr_;
    std::vector<Quadratic2> face_q_;
    std::unique_ptr<PointLocator> locator_;
    MatchResult result_;
};

/// Approximate maximum-overlap translation of Q over P.
MatchResult match_polygons(const SimplePolygon& p, const SimplePolygon& q, double eps, const Config& cfg = {});

}  // namespace polymatch
