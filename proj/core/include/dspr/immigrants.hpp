#pragma once

#include <vector>

#include "dspr/ga.hpp"

namespace dspr {

enum class ImmigrantOrigin { Random, EliteDerived };

struct ImmigrantBatch {
    std::vector<RouteChromosome> chromosomes;
    ImmigrantOrigin origin = ImmigrantOrigin::Random;
};

/// Fresh random-walk individuals (the RIGA diversity source).
ImmigrantBatch make_random_immigrants(const TopologySnapshot& graph, NodeId s, NodeId d, int count,
                                      Rng& rng, long* fallback_count = nullptr);

/// Elite-derived immigrants: each is a copy of E(t-1), mutated with
/// probability p_m_i, otherwise the elite itself.
ImmigrantBatch make_elitism_immigrants(const RouteChromosome& elite, const TopologySnapshot& graph,
                                       int count, double p_m_i, Rng& rng);

/// Evicts the |batch| lowest-fitness members (ties evict the later index
/// first) and inserts the batch. Population size is preserved.
void replace_worst(Population& population, const ImmigrantBatch& batch,
                   const TopologySnapshot& graph);

}  // namespace dspr
