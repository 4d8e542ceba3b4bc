#include <benchmark/benchmark.h>

#include "dspr/ga.hpp"
#include "dspr/oracle.hpp"
#include "dspr/topology.hpp"

using namespace dspr;

namespace {

TopologySnapshot make_topology(int nodes, Rng& rng) {
    RwpParams params;
    params.node_count = nodes;
    while (true) {
        auto [graph, state] = generate_rwp_topology(params, rng);
        if (ensure_sd_connected(graph, 0, nodes - 1)) return graph;
    }
}

void BM_GenerateTopology(benchmark::State& state) {
    RwpParams params;
    params.node_count = static_cast<int>(state.range(0));
    Rng rng(1);
    for (auto _ : state) {
        auto result = generate_rwp_topology(params, rng);
        benchmark::DoNotOptimize(result.first.edges.size());
    }
}
BENCHMARK(BM_GenerateTopology)->Arg(50)->Arg(200);

void BM_AdvanceMobility(benchmark::State& state) {
    RwpParams params;
    params.node_count = static_cast<int>(state.range(0));
    Rng rng(2);
    auto [graph, mobility] = generate_rwp_topology(params, rng);
    for (auto _ : state) {
        advance_mobility(mobility, params, 1.0, rng);
        graph.positions = mobility.position;
        recompute_edges(graph, params, rng);
        benchmark::DoNotOptimize(graph.edges.size());
    }
}
BENCHMARK(BM_AdvanceMobility)->Arg(50)->Arg(200);

void BM_Dijkstra(benchmark::State& state) {
    Rng rng(3);
    const int nodes = static_cast<int>(state.range(0));
    auto graph = make_topology(nodes, rng);
    for (auto _ : state) {
        auto result = dijkstra(graph, 0, nodes - 1);
        benchmark::DoNotOptimize(result.cost);
    }
}
BENCHMARK(BM_Dijkstra)->Arg(50)->Arg(200);

void BM_EvolveGeneration(benchmark::State& state) {
    Rng rng(4);
    const int nodes = 50;
    auto graph = make_topology(nodes, rng);
    GaParams params;
    params.population_size = static_cast<int>(state.range(0));
    Population population = init_population(graph, 0, nodes - 1, params, rng);
    for (auto _ : state) {
        evolve_one_generation(population, graph, params, rng);
        benchmark::DoNotOptimize(population.generation);
    }
}
BENCHMARK(BM_EvolveGeneration)->Arg(20)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
