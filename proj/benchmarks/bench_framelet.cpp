// ---------------------------------------------------------------------------
// Framelet transform costs: exact (dense eigendecomposition, amortized) vs
// Chebyshev (matrix-free) application, across graph size and polynomial
// degree.
// ---------------------------------------------------------------------------

#include "plufg/framelet.hpp"
#include "plufg/graph.hpp"
#include "plufg/rng.hpp"

#include <benchmark/benchmark.h>

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

namespace {

using namespace plufg;

Graph random_connected_graph(Rng& rng, int n, int extra_edges) {
    std::set<std::pair<int, int>> seen;
    std::vector<Edge> edges;
    auto add = [&](int a, int b) {
        const auto key = std::minmax(a, b);
        if (a == b || !seen.insert(key).second) return;
        edges.push_back({a, b, 0.5 + 1.5 * rng.uniform()});
    };
    for (int v = 1; v < n; ++v) {
        add(static_cast<int>(rng.below(static_cast<std::uint64_t>(v))), v);
    }
    for (int t = 0; t < extra_edges; ++t) {
        add(static_cast<int>(rng.below(static_cast<std::uint64_t>(n))),
            static_cast<int>(rng.below(static_cast<std::uint64_t>(n))));
    }
    return Graph::from_edges(n, edges);
}

Matrix random_signal(Rng& rng, int n, int c) {
    Matrix F(n, c);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < c; ++j) F(i, j) = rng.normal();
    }
    return F;
}

void BM_ExactBuild(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(1);
    const Graph g = random_connected_graph(rng, n, 3 * n);
    const ScalingSet set = haar_scaling_set();
    for (auto _ : state) {
        benchmark::DoNotOptimize(FrameletSystem::exact(g, set, 1, 2.0));
    }
}
BENCHMARK(BM_ExactBuild)->Arg(64)->Arg(256)->Arg(512);

void BM_ExactAnalyze(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(1);
    const Graph g = random_connected_graph(rng, n, 3 * n);
    const FrameletSystem sys = FrameletSystem::exact(g, haar_scaling_set(), 1, 2.0);
    const Matrix F = random_signal(rng, n, 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sys.analyze(F));
    }
}
BENCHMARK(BM_ExactAnalyze)->Arg(64)->Arg(256)->Arg(512);

void BM_ChebyshevAnalyze(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int degree = static_cast<int>(state.range(1));
    Rng rng(1);
    const Graph g = random_connected_graph(rng, n, 3 * n);
    const FrameletSystem sys = FrameletSystem::chebyshev(g, haar_scaling_set(), 1, 2.0, degree);
    const Matrix F = random_signal(rng, n, 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sys.analyze(F));
    }
}
BENCHMARK(BM_ChebyshevAnalyze)
    ->Args({256, 3})
    ->Args({256, 7})
    ->Args({2048, 3})
    ->Args({2048, 7});

void BM_RoundTrip(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(1);
    const Graph g = random_connected_graph(rng, n, 3 * n);
    const FrameletSystem sys = FrameletSystem::chebyshev(g, haar_scaling_set(), 2, 2.0, 7);
    const Matrix F = random_signal(rng, n, 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sys.synthesize(sys.analyze(F)));
    }
}
BENCHMARK(BM_RoundTrip)->Arg(256)->Arg(2048);

}  // namespace

BENCHMARK_MAIN();
