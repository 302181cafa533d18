#include <benchmark/benchmark.h>

#include "egret/gradient.hpp"
#include "egret/network.hpp"
#include "egret/rate_analysis.hpp"
#include "egret/router.hpp"

namespace {

egret::QuantumNetwork make_net(int nodes, int links, std::uint64_t seed) {
    egret::GenerationSpec spec;
    spec.nodes = nodes;
    spec.links = links;
    return egret::generate_network(spec, seed);
}

void BM_GenerateNetwork(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(make_net(n, 2 * n, 7));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GenerateNetwork)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_RunRouting(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const egret::QuantumNetwork net = make_net(n, 2 * n, 7);
    egret::RoutingParams params;
    params.threads = 64;
    params.node_budget = n / 2;
    for (auto _ : state)
        benchmark::DoNotOptimize(egret::run_routing(net, 0, n - 1, params, 11));
    state.SetItemsProcessed(state.iterations() * params.threads);
}
BENCHMARK(BM_RunRouting)->RangeMultiplier(2)->Range(16, 128);

void BM_RunRoutingWorkers(benchmark::State& state) {
    const egret::QuantumNetwork net = make_net(96, 192, 7);
    egret::RoutingParams params;
    params.threads = 256;
    params.node_budget = 48;
    params.workers = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(egret::run_routing(net, 0, 95, params, 11));
}
BENCHMARK(BM_RunRoutingWorkers)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

void BM_LinkSelection(benchmark::State& state) {
    std::vector<double> gradients(state.range(0));
    for (std::size_t i = 0; i < gradients.size(); ++i)
        gradients[i] = 0.25 + static_cast<double>(i % 17);
    const egret::SelectionParams params{1.0, 2.0, 0.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(egret::link_selection_probability(gradients, params));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LinkSelection)->Range(4, 256);

void BM_CutoffRate(benchmark::State& state) {
    double tau = 0.0;
    for (auto _ : state) {
        tau = tau < 2000.0 ? tau + 1.0 : 0.0;
        benchmark::DoNotOptimize(egret::cutoff_rate(1e4, tau, 0.5));
    }
}
BENCHMARK(BM_CutoffRate);

}  // namespace

BENCHMARK_MAIN();
