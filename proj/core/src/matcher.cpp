#include "polymatch/matcher.hpp"

#include <algorithm>
#include <chrono>
#include <future>

#include "polymatch/decompose.hpp"

namespace polymatch {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

BoundingBox events_box(const PiecewiseQuadratic& psi) {
    BoundingBox box{1.0, 1.0, -1.0, -1.0};
    bool first = true;
    for (const auto& ev : psi.event_polygons()) {
        const auto b = bounding_box(ev.vertices());
        if (first) {
            box = b;
            first = false;
            continue;
        }
        box.min_x = std::min(box.min_x, b.min_x);
        box.min_y = std::min(box.min_y, b.min_y);
        box.max_x = std::max(box.max_x, b.max_x);
        box.max_y = std::max(box.max_y, b.max_y);
    }
    return box;
}

bool in_box(const BoundingBox& b, const Point& p) {
    return b.min_x <= p.x && p.x <= b.max_x && b.min_y <= p.y && p.y <= b.max_y;
}

}  // namespace

QueryStructure::~QueryStructure() = default;
QueryStructure::QueryStructure(QueryStructure&&) noexcept = default;
QueryStructure& QueryStructure::operator=(QueryStructure&&) noexcept = default;

QueryStructure::QueryStructure(const SimplePolygon& p, const SimplePolygon& q, double eps, const Config& cfg) {
    if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("eps must lie in (0, 1)");
    cfg.validate();
    parts_p_ = decompose(p).parts;
    parts_q_ = decompose(q).parts;
    const std::size_t k = std::max(parts_p_.size(), parts_q_.size());
    const double budget = eps / static_cast<double>(k * k);

    result_.epsilon = eps;
    result_.pair_budget = budget;
    result_.parts_p = parts_p_.size();
    result_.parts_q = parts_q_.size();

    auto t0 = Clock::now();
    const std::size_t np = parts_p_.size() * parts_q_.size();
    pairs_.reserve(np);
    if (cfg.parallel_pairs && np > 1) {
        std::vector<std::future<PiecewiseQuadratic>> jobs;
        for (const auto& pi : parts_p_) {
            for (const auto& qj : parts_q_) {
                jobs.push_back(std::async(std::launch::async,
                                          [&pi, &qj, budget, &cfg] { return approx_convex_pair(pi, qj, budget, cfg); }));
            }
        }
        for (auto& j : jobs) pairs_.push_back(j.get());
    } else {
        for (const auto& pi : parts_p_) {
            for (const auto& qj : parts_q_) pairs_.push_back(approx_convex_pair(pi, qj, budget, cfg));
        }
    }
    for (const auto& psi : pairs_) result_.pair_branches.emplace_back(psi.branch_name());
    result_.stats.pair_seconds = seconds_since(t0);

    t0 = Clock::now();
    std::vector<ConvexPolygon> events;
    for (const auto& psi : pairs_) events.insert(events.end(), psi.event_polygons().begin(), psi.event_polygons().end());
    result_.stats.event_polygons = events.size();
    arr_ = build_arrangement(events);
    result_.stats.vertices = arr_.vertices().size();
    result_.stats.edges = arr_.edge_count();
    result_.face_count = arr_.bounded_face_count();
    result_.stats.overlay_seconds = seconds_since(t0);

    t0 = Clock::now();
    if (cfg.linear_scan) {
        locator_ = std::make_unique<LinearScanLocator>(arr_);
    } else {
        locator_ = std::make_unique<TrapezoidalMap>(arr_, cfg.lp_seed);
    }
    result_.stats.locator_seconds = seconds_since(t0);

    t0 = Clock::now();
    std::vector<BoundingBox> boxes;
    for (const auto& psi : pairs_) boxes.push_back(events_box(psi));
    const auto& faces = arr_.faces();
    face_q_.assign(faces.size(), Quadratic2{});
    Maximum best{{0.0, 0.0}, 0.0};
    int best_face = 0;
    for (std::size_t f = 1; f < faces.size(); ++f) {
        const Point rep = faces[f].representative;
        Quadratic2 sum;
        for (std::size_t i = 0; i < pairs_.size(); ++i) {
            if (in_box(boxes[i], rep)) sum += pairs_[i].face_function(rep);
        }
        face_q_[f] = sum;
        const auto ring = arr_.cycle(faces[f].outer);
        const auto holes = arr_.holes(static_cast<int>(f));
        const Maximum m = maximize_quadratic_over_region(sum, ring, holes);
        if (m.value > best.value) {
            best = m;
            best_face = static_cast<int>(f);
        }
    }

    // The maximizer may sit on the face boundary, where the locator would
    // answer for a neighbour; pull it inside toward the representative.
    Point t = best.t;
    if (best_face > 0 && locator_->locate(t) != best_face) {
        const Point rep = faces[static_cast<std::size_t>(best_face)].representative;
        bool placed = false;
        for (double lambda = 1e-12; lambda <= 1.0 && !placed; lambda *= 4.0) {
            const Point c = t + lambda * (rep - t);
            if (locator_->locate(c) == best_face) {
                t = c;
                placed = true;
            }
        }
        if (!placed) t = rep;
    }
    result_.translation = t;
    result_.value = query(t);
    result_.stats.maximize_seconds = seconds_since(t0);
}

int QueryStructure::locate(const Point& t) const { return locator_->locate(t); }

double QueryStructure::query(const Point& t) const {
    const int f = locator_->locate(t);
    return face_q_[static_cast<std::size_t>(f)](t);
}

double QueryStructure::direct(const Point& t) const {
    double sum = 0.0;
    for (const auto& psi : pairs_) sum += psi(t);
    return sum;
}

double QueryStructure::exact(const Point& t) const {
    double sum = 0.0;
    for (const auto& a : parts_p_) {
        for (const auto& b : parts_q_) sum += overlap_area(a, b, t);
    }
    return sum;
}

MatchResult match_polygons(const SimplePolygon& p, const SimplePolygon& q, double eps, const Config& cfg) {
    return QueryStructure(p, q, eps, cfg).result();
}

}  // namespace polymatch
