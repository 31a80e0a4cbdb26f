// ---------------------------------------------------------------------------
// Implicit-layer solver costs: one fixed-point step and full solves across
// graph size, p, and the penalty profile.
// ---------------------------------------------------------------------------

#include "plufg/graph.hpp"
#include "plufg/plap.hpp"
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

void BM_IterateStep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(1);
    const Graph g = random_connected_graph(rng, n, 3 * n);
    const Matrix Y = random_signal(rng, n, 16);
    PLapConfig cfg;
    cfg.p = 1.5;
    cfg.mu = 5.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(iterate_step(g, Y, Y, cfg));
    }
}
BENCHMARK(BM_IterateStep)->Arg(256)->Arg(1024)->Arg(4096);

void BM_SolveByP(benchmark::State& state) {
    const double p = static_cast<double>(state.range(0)) / 10.0;
    Rng rng(1);
    const Graph g = random_connected_graph(rng, 512, 1536);
    const Matrix Y = random_signal(rng, 512, 16);
    PLapConfig cfg;
    cfg.p = p;
    cfg.mu = 5.0;
    cfg.max_iters = 30;
    cfg.tol = 1e-12;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_implicit(g, Y, cfg));
    }
}
BENCHMARK(BM_SolveByP)->Arg(10)->Arg(15)->Arg(20)->Arg(25);

void BM_SolveByPhi(benchmark::State& state) {
    const std::vector<PhiVariant> variants = {
        PhiVariant::power_p(), PhiVariant::tikhonov(), PhiVariant::log_diffusion(1.0),
        PhiVariant::soft_abs(1e-3)};
    const PhiVariant phi = variants[static_cast<std::size_t>(state.range(0))];
    Rng rng(1);
    const Graph g = random_connected_graph(rng, 512, 1536);
    const Matrix Y = random_signal(rng, 512, 16);
    PLapConfig cfg;
    cfg.p = 2.0;
    cfg.phi = phi;
    cfg.mu = 5.0;
    cfg.max_iters = 30;
    cfg.tol = 1e-12;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_implicit(g, Y, cfg));
    }
    state.SetLabel(phi_kind_name(phi.kind));
}
BENCHMARK(BM_SolveByPhi)->DenseRange(0, 3);

}  // namespace

BENCHMARK_MAIN();
