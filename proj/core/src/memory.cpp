#include "dspr/memory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "dspr/immigrants.hpp"

namespace dspr {

namespace {

int draw_update_delay(Rng& rng) { return std::uniform_int_distribution<int>(5, 10)(rng); }

std::set<std::pair<NodeId, NodeId>> edge_set(const std::vector<NodeId>& path) {
    std::set<std::pair<NodeId, NodeId>> edges;
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        const NodeId a = path[i], b = path[i + 1];
        edges.insert(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
    }
    return edges;
}

}  // namespace

MemoryStore init_memory(int m, const TopologySnapshot& graph, NodeId s, NodeId d, Rng& rng,
                        long* fallback_count) {
    if (m < 1) throw std::invalid_argument("memory size must be >= 1");
    MemoryStore memory;
    memory.entries.reserve(m);
    for (int i = 0; i < m; ++i) {
        MemoryEntry entry;
        entry.chromosome = seed_path(graph, s, d, rng, fallback_count);
        entry.stored_fitness = fitness(graph, entry.chromosome);
        entry.is_random_placeholder = true;
        memory.entries.push_back(std::move(entry));
    }
    memory.next_update_generation = draw_update_delay(rng);
    return memory;
}

bool detect_change(MemoryStore& memory, const TopologySnapshot& graph) {
    bool changed = false;
    for (auto& entry : memory.entries) {
        const double now = fitness(graph, entry.chromosome);
        if (now != entry.stored_fitness) changed = true;
        entry.stored_fitness = now;
    }
    return changed;
}

double similarity(const RouteChromosome& a, const RouteChromosome& b) {
    const auto ea = edge_set(a.path);
    const auto eb = edge_set(b.path);
    size_t shared = 0;
    for (const auto& e : ea) shared += eb.count(e);
    return 2.0 * static_cast<double>(shared) / static_cast<double>(ea.size() + eb.size());
}

void update_memory(MemoryStore& memory, const RouteChromosome& candidate,
                   const TopologySnapshot& graph, int t, Rng& rng) {
    const double cand_fit = fitness(graph, candidate);
    MemoryEntry incoming;
    incoming.chromosome.path = candidate.path;
    incoming.stored_fitness = cand_fit;
    incoming.is_random_placeholder = false;

    auto placeholder = std::find_if(memory.entries.begin(), memory.entries.end(),
                                    [](const MemoryEntry& e) { return e.is_random_placeholder; });
    if (placeholder != memory.entries.end()) {
        *placeholder = std::move(incoming);
    } else {
        size_t most_similar = 0;
        double best_sim = -1.0;
        for (size_t i = 0; i < memory.entries.size(); ++i) {
            const double sim = similarity(memory.entries[i].chromosome, candidate);
            if (sim > best_sim) {
                best_sim = sim;
                most_similar = i;
            }
        }
        if (cand_fit > memory.entries[most_similar].stored_fitness)
            memory.entries[most_similar] = std::move(incoming);
    }
    memory.next_update_generation = t + draw_update_delay(rng);
}

void retrieve_memory(MemoryStore& memory, Population& population, const TopologySnapshot& graph) {
    const size_t n = population.members.size();
    std::vector<RouteChromosome> merged = population.members;
    for (auto& entry : memory.entries) {
        RouteChromosome copy;
        copy.path = entry.chromosome.path;
        merged.push_back(std::move(copy));
    }
    for (auto& ch : merged) evaluate(graph, ch);
    // Population members precede memory copies; stable sort keeps them
    // ahead on ties so retrieval is a no-op unless memory strictly helps.
    std::stable_sort(merged.begin(), merged.end(), [](const RouteChromosome& a, const RouteChromosome& b) {
        return a.cached_fitness > b.cached_fitness;
    });
    merged.resize(n);
    population.members = std::move(merged);
}

void mega_generation_hook(Population& population, MemoryStore& memory,
                          const TopologySnapshot& graph, int t, const GaParams& params, Rng& rng) {
    (void)params;
    if (detect_change(memory, graph)) {
        // Store what was best in the environment that just ended: the elite
        // recorded before this generation's re-evaluation.
        update_memory(memory, population.elite, graph, t, rng);
        retrieve_memory(memory, population, graph);
    }
    if (t == memory.next_update_generation) {
        RouteChromosome best = population.best(graph);
        RouteChromosome elite = population.elite;
        const RouteChromosome& candidate =
            fitness(graph, elite) > fitness(graph, best) ? elite : best;
        update_memory(memory, candidate, graph, t, rng);
    }
}

void eiga_mega_hook(Population& population, MemoryStore& memory, const TopologySnapshot& graph,
                    int t, const GaParams& params, Rng& rng) {
    mega_generation_hook(population, memory, graph, t, params, rng);
    const int count = static_cast<int>(std::floor(params.elitism_immigrant_ratio *
                                                  static_cast<double>(population.members.size())));
    if (count > 0) {
        ImmigrantBatch batch = make_elitism_immigrants(population.elite, graph, count,
                                                       params.immigrant_mutation_prob, rng);
        replace_worst(population, batch, graph);
    }
}

}  // namespace dspr
