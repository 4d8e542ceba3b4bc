#pragma once

#include <vector>

#include "dspr/ga.hpp"

namespace dspr {

struct MemoryEntry {
    RouteChromosome chromosome;
    double stored_fitness = 0.0;
    bool is_random_placeholder = true;
};

/// Fixed-capacity store of past best routes with a stochastic update clock.
struct MemoryStore {
    std::vector<MemoryEntry> entries;
    int next_update_generation = 0;  // t_M
};

MemoryStore init_memory(int m, const TopologySnapshot& graph, NodeId s, NodeId d, Rng& rng,
                        long* fallback_count = nullptr);

/// Re-evaluates every entry under the current graph; true iff any fitness
/// moved. Refreshes stored_fitness. A change touching no stored route is
/// invisible to this test (documented blind spot).
bool detect_change(MemoryStore& memory, const TopologySnapshot& graph);

/// Writes the candidate into the lowest-index placeholder slot, or replaces
/// the most similar entry when the candidate is fitter. Reschedules t_M to
/// t + uniform[5, 10] either way.
void update_memory(MemoryStore& memory, const RouteChromosome& candidate,
                   const TopologySnapshot& graph, int t, Rng& rng);

/// Dice coefficient on undirected edge sets: 2|Ea n Eb| / (|Ea| + |Eb|).
double similarity(const RouteChromosome& a, const RouteChromosome& b);

/// Merges the m stored routes with the population and keeps the best n.
/// The memory itself is not consumed.
void retrieve_memory(MemoryStore& memory, Population& population, const TopologySnapshot& graph);

/// MEGA per-generation step: detect change; on change store the pre-change
/// best (the entering elite) then retrieve memory; on t = t_M store the
/// fitter of best-of-population and elite.
void mega_generation_hook(Population& population, MemoryStore& memory,
                          const TopologySnapshot& graph, int t, const GaParams& params, Rng& rng);

/// MEGA step followed by elitism-based immigrant injection (EIGA-MEGA).
void eiga_mega_hook(Population& population, MemoryStore& memory, const TopologySnapshot& graph,
                    int t, const GaParams& params, Rng& rng);

}  // namespace dspr
