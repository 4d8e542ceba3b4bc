#include "dspr/immigrants.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dspr {

ImmigrantBatch make_random_immigrants(const TopologySnapshot& graph, NodeId s, NodeId d, int count,
                                      Rng& rng, long* fallback_count) {
    if (count < 0) throw std::invalid_argument("immigrant count must be >= 0");
    ImmigrantBatch batch;
    batch.origin = ImmigrantOrigin::Random;
    batch.chromosomes.reserve(count);
    for (int i = 0; i < count; ++i)
        batch.chromosomes.push_back(seed_path(graph, s, d, rng, fallback_count));
    return batch;
}

ImmigrantBatch make_elitism_immigrants(const RouteChromosome& elite, const TopologySnapshot& graph,
                                       int count, double p_m_i, Rng& rng) {
    if (count < 0) throw std::invalid_argument("immigrant count must be >= 0");
    ImmigrantBatch batch;
    batch.origin = ImmigrantOrigin::EliteDerived;
    batch.chromosomes.reserve(count);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int i = 0; i < count; ++i) {
        if (coin(rng) < p_m_i) {
            batch.chromosomes.push_back(mutate(graph, elite, rng));
        } else {
            // The elite itself enters as the immigrant.
            RouteChromosome copy;
            copy.path = elite.path;
            batch.chromosomes.push_back(std::move(copy));
        }
    }
    return batch;
}

void replace_worst(Population& population, const ImmigrantBatch& batch,
                   const TopologySnapshot& graph) {
    const size_t n = population.members.size();
    const size_t k = batch.chromosomes.size();
    if (k > n) throw std::invalid_argument("immigrant batch larger than population");
    if (k == 0) return;

    for (auto& member : population.members) evaluate(graph, member);
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    // Lowest fitness first; equal fitness evicts the higher index first.
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        const double fa = population.members[a].cached_fitness;
        const double fb = population.members[b].cached_fitness;
        if (fa != fb) return fa < fb;
        return a > b;
    });
    for (size_t i = 0; i < k; ++i) {
        RouteChromosome incoming = batch.chromosomes[i];
        evaluate(graph, incoming);
        population.members[order[i]] = std::move(incoming);
    }
}

}  // namespace dspr
