#include "polymatch/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace polymatch {

namespace {

struct Row {
    std::vector<double> a;
    double b;
};

double violation_tolerance(const Row& h, const std::vector<double>& x) {
    double scale = std::max(1.0, std::abs(h.b));
    for (std::size_t j = 0; j < x.size(); ++j) scale = std::max(scale, std::abs(h.a[j] * x[j]));
    return 1e-11 * scale;
}

std::optional<std::vector<double>> solve_1d(double c, const std::vector<Row>& rows, double bound) {
    double lo = -bound;
    double hi = bound;
    for (const auto& h : rows) {
        const double a = h.a[0];
        const double scale = std::max(1.0, std::abs(h.b));
        if (std::abs(a) <= 1e-14 * scale) {
            if (h.b < -1e-11 * scale) return std::nullopt;
            continue;
        }
        if (a > 0.0) {
            hi = std::min(hi, h.b / a);
        } else {
            lo = std::max(lo, h.b / a);
        }
    }
    if (lo > hi) {
        if (lo - hi > 1e-10 * std::max({1.0, std::abs(lo), std::abs(hi)})) return std::nullopt;
        const double mid = 0.5 * (lo + hi);
        lo = hi = mid;
    }
    return std::vector<double>{c > 0.0 ? hi : (c < 0.0 ? lo : std::clamp(0.0, lo, hi))};
}

std::optional<std::vector<double>> solve_rec(const std::vector<double>& c, std::vector<Row> rows,
                                             double bound, std::mt19937_64& rng) {
    const std::size_t d = c.size();
    if (d == 1) return solve_1d(c[0], rows, bound);

    std::shuffle(rows.begin(), rows.end(), rng);
    std::vector<double> x(d);
    for (std::size_t j = 0; j < d; ++j) x[j] = c[j] >= 0.0 ? bound : -bound;

    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& h = rows[i];
        const double lhs = std::inner_product(h.a.begin(), h.a.end(), x.begin(), 0.0);
        if (lhs <= h.b + violation_tolerance(h, x)) continue;

        // The new optimum lies on h: eliminate the coordinate with the largest coefficient.
        std::size_t k = 0;
        for (std::size_t j = 1; j < d; ++j) {
            if (std::abs(h.a[j]) > std::abs(h.a[k])) k = j;
        }
        const double pivot = h.a[k];
        if (std::abs(pivot) < 1e-300) return std::nullopt;
        auto reduce = [&](const std::vector<double>& a, double b) {
            Row r;
            r.a.reserve(d - 1);
            const double f = a[k] / pivot;
            for (std::size_t j = 0; j < d; ++j) {
                if (j != k) r.a.push_back(a[j] - f * h.a[j]);
            }
            r.b = b - f * h.b;
            return r;
        };
        std::vector<double> sub_c;
        for (std::size_t j = 0; j < d; ++j) {
            if (j != k) sub_c.push_back(c[j] - c[k] * h.a[j] / pivot);
        }
        std::vector<Row> sub_rows;
        sub_rows.reserve(i + 2);
        for (std::size_t p = 0; p < i; ++p) sub_rows.push_back(reduce(rows[p].a, rows[p].b));
        std::vector<double> unit(d, 0.0);
        unit[k] = 1.0;
        sub_rows.push_back(reduce(unit, bound));
        unit[k] = -1.0;
        sub_rows.push_back(reduce(unit, bound));

        auto sub = solve_rec(sub_c, std::move(sub_rows), bound, rng);
        if (!sub) return std::nullopt;
        double acc = h.b;
        for (std::size_t j = 0, s = 0; j < d; ++j) {
            if (j == k) continue;
            x[j] = (*sub)[s++];
            acc -= h.a[j] * x[j];
        }
        x[k] = acc / pivot;
    }
    return x;
}

}  // namespace

std::optional<std::vector<double>> solve_lp(const LinearProgram& lp, std::uint64_t seed) {
    const std::size_t d = lp.objective.size();
    if (d == 0) throw std::invalid_argument("linear program has no variables");
    if (!(lp.bound > 0.0)) throw std::invalid_argument("linear program bound must be positive");
    std::vector<Row> rows;
    rows.reserve(lp.constraints.size());
    for (const auto& h : lp.constraints) {
        if (h.a.size() != d) throw std::invalid_argument("constraint dimension mismatch");
        rows.push_back({h.a, h.b});
    }
    std::mt19937_64 rng(seed);
    return solve_rec(lp.objective, std::move(rows), lp.bound, rng);
}

}  // namespace polymatch
