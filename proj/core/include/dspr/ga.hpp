#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "dspr/chromosome.hpp"
#include "dspr/topology.hpp"

namespace dspr {

struct GaParams {
    int population_size = 20;       // n
    double crossover_prob = 0.9;    // p_c
    double mutation_prob = 0.1;     // p_m
    double random_immigrant_ratio = 0.2;   // r_ri (riga)
    double elitism_immigrant_ratio = 0.2;  // r_ei (eiga)
    double immigrant_mutation_prob = 0.8;  // p_m^i (eiga)
    int memory_size = 2;                   // m (mega)

    void validate() const;  // throws std::invalid_argument
};

struct Population {
    std::vector<RouteChromosome> members;
    /// Best member of the previous generation under that generation's
    /// environment, E(t-1). Set by init_population and refreshed at the end
    /// of every evolve_one_generation call.
    RouteChromosome elite;
    int generation = 0;

    const RouteChromosome& best(const TopologySnapshot& graph);
    const RouteChromosome& worst(const TopologySnapshot& graph);
};

struct RandomWalkError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Random walk from s to d over active edges, moving to a uniformly chosen
/// unvisited neighbor each step. Dead ends restart the walk from s; throws
/// RandomWalkError after max_restarts failed walks.
RouteChromosome random_walk_path(const TopologySnapshot& graph, NodeId s, NodeId d, Rng& rng,
                                 int max_restarts = 100);

/// random_walk_path with a Dijkstra-path fallback when the restart budget is
/// exhausted. fallback_count, when given, counts fallback occurrences.
RouteChromosome seed_path(const TopologySnapshot& graph, NodeId s, NodeId d, Rng& rng,
                          long* fallback_count = nullptr);

Population init_population(const TopologySnapshot& graph, NodeId s, NodeId d,
                           const GaParams& params, Rng& rng, long* fallback_count = nullptr);

/// n pairwise tournaments: two uniform draws, fitter copied, ties split by
/// a fair coin. Assumes the population is evaluated under `graph`.
std::vector<RouteChromosome> select_parents(Population& population, const TopologySnapshot& graph,
                                            Rng& rng);

/// Single-point crossover at a uniformly chosen common internal node; parents
/// without one pass through unchanged. Offspring are loop-repaired.
std::pair<RouteChromosome, RouteChromosome> crossover(const RouteChromosome& a,
                                                      const RouteChromosome& b, Rng& rng);

/// Subpath mutation: keeps a prefix up to a uniformly chosen internal
/// position and regrows the suffix by a random walk avoiding the prefix.
/// Returns the input unchanged when no avoiding walk is found in 20 tries.
RouteChromosome mutate(const TopologySnapshot& graph, const RouteChromosome& ch, Rng& rng);

/// Per-generation scheme plug-in (immigrants and/or memory), applied after
/// crossover/mutation and before elitism.
using SchemeHook = std::function<void(Population&, const TopologySnapshot&, const GaParams&, Rng&)>;

/// One generation: evaluate, select, crossover, mutate, re-evaluate, scheme
/// hook, then unconditional elitism (E(t-1) replaces the current worst if
/// still feasible and fitter than the current best).
void evolve_one_generation(Population& population, const TopologySnapshot& graph,
                           const GaParams& params, Rng& rng, const SchemeHook& hook = {});

}  // namespace dspr
