#include <benchmark/benchmark.h>

#include <random>

#include "gpq/limit.hpp"
#include "gpq/nehari.hpp"

using namespace gpq;

namespace {

VertexFunction random_fn(const WeightedGraph& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    VertexFunction f(g.size());
    for (double& v : f) v = uni(rng);
    return f;
}

void bm_p_laplacian(benchmark::State& state) {
    const auto g = WeightedGraph::grid((int)state.range(0), (int)state.range(0));
    std::mt19937_64 rng(1);
    const VertexFunction psi = random_fn(g, rng);
    const VertexFunction gn = grad_norms(g, psi);
    for (auto _ : state) {
        double acc = 0.0;
        for (int x = 0; x < g.size(); ++x)
            acc += p_laplacian_cached(g, psi, gn, 3.0, x);
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * g.size());
}
BENCHMARK(bm_p_laplacian)->Arg(8)->Arg(32)->Arg(64);

void bm_wlambda_norm(benchmark::State& state) {
    const auto g = WeightedGraph::grid((int)state.range(0), (int)state.range(0));
    std::mt19937_64 rng(2);
    const VertexFunction psi = random_fn(g, rng);
    const VertexFunction a(g.size(), 0.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(wlambda_norm(g, psi, 2.5, 100.0, a));
    state.SetItemsProcessed(state.iterations() * g.size());
}
BENCHMARK(bm_wlambda_norm)->Arg(8)->Arg(32)->Arg(64);

void bm_nehari_projection(benchmark::State& state) {
    const auto g = WeightedGraph::path((int)state.range(0));
    const PotentialPair pot{VertexFunction(g.size(), 0.0),
                            VertexFunction(g.size(), 0.0), 0.0};
    const ExponentConfig cfg{2.0, 3.0, 4.0, 0.1, 5.0, 5.0};
    const RemarkExample nl(g, cfg.alpha, cfg.beta(), 0);
    const auto ctx = EnergyContext::full_graph(g, pot, cfg, nl, 1.0);
    std::mt19937_64 rng(3);
    const PairState dir{random_fn(g, rng), random_fn(g, rng)};
    for (auto _ : state) benchmark::DoNotOptimize(project_to_nehari(ctx, dir));
}
BENCHMARK(bm_nehari_projection)->Arg(12)->Arg(64);

void bm_small_solve(benchmark::State& state) {
    const auto g = WeightedGraph::path(6);
    PotentialPair pot;
    pot.a = {2, 1, 0, 0, 1, 2};
    pot.b = pot.a;
    const ExponentConfig cfg{2.0, 2.0, 4.0, 0.1, 5.0, 5.0};
    const RemarkExample nl(g, cfg.alpha, cfg.beta(), 0);
    const auto env = nl.envelope(g);
    const auto ctx = EnergyContext::full_graph(g, pot, cfg, nl, 10.0);
    SolveOptions opts;
    opts.restarts = 4;
    opts.seed = 5;
    for (auto _ : state) benchmark::DoNotOptimize(solve_ground_state(ctx, env, opts));
}
BENCHMARK(bm_small_solve);

}  // namespace

BENCHMARK_MAIN();
