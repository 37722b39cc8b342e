#include "polymatch/oracle.hpp"

#include <algorithm>
#include <future>
#include <thread>

#include "polymatch/decompose.hpp"

namespace polymatch {

namespace {

struct Parts {
    std::vector<ConvexPolygon> p;
    std::vector<ConvexPolygon> q;

    double at(const Point& t) const {
        double sum = 0.0;
        for (const auto& a : p) {
            for (const auto& b : q) sum += overlap_area(a, b, t);
        }
        return sum;
    }
};

struct Sample {
    Point t;
    double value = -1.0;
};

// Deterministic argmax: larger value, then smaller tx, then smaller ty.
bool better(const Sample& a, const Sample& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.t.x != b.t.x) return a.t.x < b.t.x;
    return a.t.y < b.t.y;
}

Sample scan(const Parts& parts, Point origin, double px, double py, int nx, int ny, bool parallel) {
    auto row = [&](int i) {
        Sample best;
        for (int j = 0; j < ny; ++j) {
            const Point t{origin.x + px * i, origin.y + py * j};
            const Sample s{t, parts.at(t)};
            if (better(s, best)) best = s;
        }
        return best;
    };
    std::vector<Sample> rows(static_cast<std::size_t>(nx));
    const unsigned workers = parallel ? std::max(1u, std::thread::hardware_concurrency()) : 1u;
    if (workers > 1 && nx > 1) {
        std::vector<std::future<void>> jobs;
        for (unsigned w = 0; w < workers; ++w) {
            jobs.push_back(std::async(std::launch::async, [&, w] {
                for (int i = static_cast<int>(w); i < nx; i += static_cast<int>(workers)) {
                    rows[static_cast<std::size_t>(i)] = row(i);
                }
            }));
        }
        for (auto& j : jobs) j.get();
    } else {
        for (int i = 0; i < nx; ++i) rows[static_cast<std::size_t>(i)] = row(i);
    }
    Sample best;
    for (const auto& s : rows) {
        if (better(s, best)) best = s;
    }
    return best;
}

double total_perimeter(const SimplePolygon& s) { return perimeter(s.ring()); }

}  // namespace

double exact_overlap_general(const SimplePolygon& p, const SimplePolygon& q, const Point& t) {
    return Parts{decompose(p).parts, decompose(q).parts}.at(t);
}

OracleReport grid_max_overlap(const SimplePolygon& p, const SimplePolygon& q, const OracleOptions& opt) {
    if (opt.base_grid < 2 || opt.refine_grid < 2 || opt.refinement_levels < 0) {
        throw PreconditionError("oracle grid sizes must be at least 2");
    }
    const Parts parts{decompose(p).parts, decompose(q).parts};
    const auto bp = bounding_box(p.ring());
    const auto bq = bounding_box(q.ring());
    const Point lo{bp.min_x - bq.max_x, bp.min_y - bq.max_y};
    const Point hi{bp.max_x - bq.min_x, bp.max_y - bq.min_y};

    double px = (hi.x - lo.x) / (opt.base_grid - 1);
    double py = (hi.y - lo.y) / (opt.base_grid - 1);
    Sample best = scan(parts, lo, px, py, opt.base_grid, opt.base_grid, opt.parallel);

    for (int level = 0; level < opt.refinement_levels; ++level) {
        // Cover the incumbent's neighbouring cells at a tenth of the pitch.
        const double nx = 2.0 * px / (opt.refine_grid - 1);
        const double ny = 2.0 * py / (opt.refine_grid - 1);
        const Point origin{best.t.x - px, best.t.y - py};
        px = nx;
        py = ny;
        const Sample s = scan(parts, origin, px, py, opt.refine_grid, opt.refine_grid, opt.parallel);
        if (better(s, best)) best = s;
    }

    OracleReport r;
    r.best_translation = best.t;
    r.best_value = best.value;
    r.grid_pitch = std::max(px, py);
    r.refinement_levels = opt.refinement_levels;
    r.value_slack_bound = (total_perimeter(p) + total_perimeter(q)) * r.grid_pitch;
    return r;
}

}  // namespace polymatch
