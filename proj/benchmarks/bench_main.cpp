#include <benchmark/benchmark.h>

#include <random>

#include "circsep/envelope.hpp"
#include "circsep/hierarchy.hpp"
#include "circsep/oracle.hpp"
#include "circsep/separator.hpp"

namespace {

using namespace circsep;

std::vector<Point2> convex_points(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> ang(n);
    for (double& a : ang) a = 2.0 * M_PI * uni(rng);
    std::sort(ang.begin(), ang.end());
    std::vector<Point2> pts;
    for (double a : ang) {
        const double r = 1.0 + 0.3 * uni(rng);
        pts.push_back({r * std::cos(a), r * std::sin(a)});
    }
    return convex_hull(std::move(pts)).vertices;
}

void BM_SegmentVoronoi(benchmark::State& state) {
    const auto [p, q] = gen_random(static_cast<int>(state.range(0)), 11);
    std::vector<Segment> all(p);
    all.insert(all.end(), q.begin(), q.end());
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_segment_voronoi(all, {}, false));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SegmentVoronoi)->Range(1 << 8, 1 << 14)->Complexity(benchmark::oNLogN);

void BM_HierarchyBuild(benchmark::State& state) {
    const auto pts = convex_points(static_cast<int>(state.range(0)), 12);
    for (auto _ : state) {
        benchmark::DoNotOptimize(Hierarchy::build(pts));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HierarchyBuild)->Range(1 << 8, 1 << 15)->Complexity(benchmark::oNLogN);

void BM_CurveQuery(benchmark::State& state) {
    const auto pts = convex_points(static_cast<int>(state.range(0)), 13);
    const Hierarchy h = Hierarchy::build(pts);
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    for (auto _ : state) {
        const CurveF z = curve_from_sites(Point2{uni(rng), uni(rng)}, Point2{uni(rng), uni(rng)});
        benchmark::DoNotOptimize(h.query_curve(z));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CurveQuery)->Range(1 << 8, 1 << 15)->Complexity(benchmark::oLogN);

void BM_FindAllLargest(benchmark::State& state) {
    const auto [p, q] = gen_random(static_cast<int>(state.range(0)), 15);
    SeparatorOptions opts;
    opts.validate = false;
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_all_largest(p, q, {}, opts));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FindAllLargest)->Range(1 << 8, 1 << 13)->Complexity(benchmark::oNLogN);

}  // namespace

BENCHMARK_MAIN();
