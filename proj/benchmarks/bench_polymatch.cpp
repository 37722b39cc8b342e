#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>

#include "polymatch/arrangement.hpp"
#include "polymatch/decompose.hpp"
#include "polymatch/matcher.hpp"
#include "polymatch/overlap.hpp"
#include "polymatch/point_location.hpp"

using namespace polymatch;

namespace {

ConvexPolygon ellipse(std::mt19937_64& rng, int n, double scale = 1.0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double ax = scale * (0.5 + u(rng));
    const double ay = scale * (0.5 + u(rng));
    std::vector<Point> v;
    for (int i = 0; i < n; ++i) {
        const double a = 2.0 * std::numbers::pi * (i + 0.5 * u(rng)) / n;
        v.push_back({ax * std::cos(a), ay * std::sin(a)});
    }
    return ConvexPolygon(v);
}

/// Comb with `teeth` slots: 2 * teeth notches.
SimplePolygon comb(int teeth) {
    std::vector<Point> r{{0, 0}, {2.0 * teeth + 1, 0}};
    for (int i = teeth; i >= 0; --i) {
        r.push_back({2.0 * i + 1, 3});
        r.push_back({2.0 * i, 3});
        if (i > 0) {
            r.push_back({2.0 * i, 1});
            r.push_back({2.0 * i - 1, 1});
        }
    }
    return SimplePolygon(r);
}

void BM_OverlapArea(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const int n = static_cast<int>(state.range(0));
    const auto x = ellipse(rng, n);
    const auto y = ellipse(rng, n);
    double s = 0.0;
    for (auto _ : state) {
        s += overlap_area(x, y, {0.1, 0.2});
        benchmark::DoNotOptimize(s);
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_OverlapArea)->RangeMultiplier(4)->Range(8, 512)->Complexity();

void BM_PairIncomparable(benchmark::State& state) {
    std::mt19937_64 rng(2);
    const auto x = ellipse(rng, 64);
    const auto y = ellipse(rng, 64);
    const double eps = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(approx_convex_pair(x, y, eps));
}
BENCHMARK(BM_PairIncomparable)->Arg(4)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_PairSmallInLarge(benchmark::State& state) {
    std::mt19937_64 rng(3);
    const auto x = ellipse(rng, 32, 0.2);
    const auto y = ellipse(rng, 32, 3.0);
    const double eps = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(approx_convex_pair(x, y, eps));
}
BENCHMARK(BM_PairSmallInLarge)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Slice(benchmark::State& state) {
    std::mt19937_64 rng(4);
    const auto x = ellipse(rng, 32);
    const auto y = ellipse(rng, 32);
    const auto top = maximize_convex_overlap(x, y);
    for (auto _ : state) benchmark::DoNotOptimize(compute_slice(x, y, 0.5 * top.value, top.t));
}
BENCHMARK(BM_Slice)->Unit(benchmark::kMillisecond);

void BM_Decompose(benchmark::State& state) {
    const auto p = comb(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(decompose(p));
}
BENCHMARK(BM_Decompose)->Arg(2)->Arg(8)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_ArrangementAndLocator(benchmark::State& state) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<ConvexPolygon> polys;
    for (int i = 0; i < state.range(0); ++i) polys.push_back(ellipse(rng, 6, 0.5).translated({u(rng), u(rng)}));
    for (auto _ : state) {
        const auto arr = build_arrangement(polys);
        const TrapezoidalMap map(arr);
        benchmark::DoNotOptimize(map.trapezoid_count());
    }
}
BENCHMARK(BM_ArrangementAndLocator)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Query(benchmark::State& state) {
    const auto p = comb(2);
    const auto q = comb(1);
    const QueryStructure qs(p, q, 0.25);
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    double s = 0.0;
    for (auto _ : state) {
        s += qs.query({u(rng), u(rng)});
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_Query);

void BM_Match(benchmark::State& state) {
    const auto p = comb(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(match_polygons(p, p, 0.25));
}
BENCHMARK(BM_Match)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
