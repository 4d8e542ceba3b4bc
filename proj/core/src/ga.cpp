#include "dspr/ga.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "dspr/oracle.hpp"

namespace dspr {

namespace {

std::vector<std::vector<NodeId>> build_adjacency(const TopologySnapshot& graph) {
    std::vector<std::vector<NodeId>> adj(graph.node_count);
    for (const auto& [key, cost] : graph.edges) {
        (void)cost;
        adj[key.first].push_back(key.second);
        adj[key.second].push_back(key.first);
    }
    return adj;
}

/// One random walk attempt from `from` to d over adj, never entering a node
/// already in `visited`. Appends to `path`; true on reaching d.
bool walk_once(const std::vector<std::vector<NodeId>>& adj, NodeId from, NodeId d,
               std::vector<char>& visited, std::vector<NodeId>& path, Rng& rng) {
    NodeId u = from;
    std::vector<NodeId> options;
    while (u != d) {
        options.clear();
        for (NodeId v : adj[u])
            if (!visited[v]) options.push_back(v);
        if (options.empty()) return false;
        std::uniform_int_distribution<size_t> pick(0, options.size() - 1);
        u = options[pick(rng)];
        visited[u] = 1;
        path.push_back(u);
    }
    return true;
}

}  // namespace

void GaParams::validate() const {
    if (population_size < 2) throw std::invalid_argument("population size must be >= 2");
    auto prob = [](double p, const char* name) {
        if (p < 0.0 || p > 1.0) throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    };
    prob(crossover_prob, "p_c");
    prob(mutation_prob, "p_m");
    prob(random_immigrant_ratio, "r_ri");
    prob(elitism_immigrant_ratio, "r_ei");
    prob(immigrant_mutation_prob, "p_m_i");
    if (random_immigrant_ratio + elitism_immigrant_ratio > 0.5)
        throw std::invalid_argument("r_ri + r_ei must not exceed 0.5");
    if (memory_size < 1) throw std::invalid_argument("memory size must be >= 1");
}

const RouteChromosome& Population::best(const TopologySnapshot& graph) {
    size_t best_idx = 0;
    double best_fit = -1.0;
    for (size_t i = 0; i < members.size(); ++i) {
        const double f = evaluate(graph, members[i]);
        if (f > best_fit) {
            best_fit = f;
            best_idx = i;
        }
    }
    return members[best_idx];
}

const RouteChromosome& Population::worst(const TopologySnapshot& graph) {
    size_t worst_idx = 0;
    double worst_fit = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < members.size(); ++i) {
        const double f = evaluate(graph, members[i]);
        if (f <= worst_fit) {  // ties resolve to the later index
            worst_fit = f;
            worst_idx = i;
        }
    }
    return members[worst_idx];
}

RouteChromosome random_walk_path(const TopologySnapshot& graph, NodeId s, NodeId d, Rng& rng,
                                 int max_restarts) {
    if (s == d) throw std::invalid_argument("source equals destination");
    if (!graph.is_active(s) || !graph.is_active(d)) throw std::invalid_argument("endpoint is not active");
    const auto adj = build_adjacency(graph);
    std::vector<char> visited(graph.node_count, 0);
    std::vector<NodeId> path;
    for (int attempt = 0; attempt < max_restarts; ++attempt) {
        std::fill(visited.begin(), visited.end(), 0);
        path.assign(1, s);
        visited[s] = 1;
        if (walk_once(adj, s, d, visited, path, rng)) {
            RouteChromosome ch;
            ch.path = std::move(path);
            return ch;
        }
    }
    throw RandomWalkError("random walk failed to reach destination within restart budget");
}

RouteChromosome seed_path(const TopologySnapshot& graph, NodeId s, NodeId d, Rng& rng,
                          long* fallback_count) {
    try {
        return random_walk_path(graph, s, d, rng);
    } catch (const RandomWalkError&) {
        if (fallback_count) ++*fallback_count;
        const OracleResult oracle = dijkstra(graph, s, d);
        if (!oracle.reachable())
            throw std::runtime_error("cannot seed chromosome: destination unreachable");
        RouteChromosome ch;
        ch.path = oracle.path;
        return ch;
    }
}

Population init_population(const TopologySnapshot& graph, NodeId s, NodeId d,
                           const GaParams& params, Rng& rng, long* fallback_count) {
    params.validate();
    Population pop;
    pop.members.reserve(params.population_size);
    for (int i = 0; i < params.population_size; ++i)
        pop.members.push_back(seed_path(graph, s, d, rng, fallback_count));
    pop.elite = pop.best(graph);
    pop.generation = 0;
    return pop;
}

std::vector<RouteChromosome> select_parents(Population& population, const TopologySnapshot& graph,
                                            Rng& rng) {
    const size_t n = population.members.size();
    std::uniform_int_distribution<size_t> pick(0, n - 1);
    std::vector<RouteChromosome> pool;
    pool.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        RouteChromosome& a = population.members[pick(rng)];
        RouteChromosome& b = population.members[pick(rng)];
        const double fa = evaluate(graph, a);
        const double fb = evaluate(graph, b);
        if (fa > fb)
            pool.push_back(a);
        else if (fb > fa)
            pool.push_back(b);
        else
            pool.push_back(std::uniform_int_distribution<int>(0, 1)(rng) ? a : b);
    }
    return pool;
}

std::pair<RouteChromosome, RouteChromosome> crossover(const RouteChromosome& a,
                                                      const RouteChromosome& b, Rng& rng) {
    // Common internal nodes only: crossing at an endpoint would swap whole paths.
    std::vector<NodeId> common;
    if (a.path.size() > 2 && b.path.size() > 2) {
        std::vector<char> in_b(1 + *std::max_element(b.path.begin(), b.path.end()), 0);
        for (size_t i = 1; i + 1 < b.path.size(); ++i) in_b[b.path[i]] = 1;
        for (size_t i = 1; i + 1 < a.path.size(); ++i)
            if (a.path[i] < static_cast<NodeId>(in_b.size()) && in_b[a.path[i]]) common.push_back(a.path[i]);
    }
    if (common.empty()) return {a, b};

    std::uniform_int_distribution<size_t> pick(0, common.size() - 1);
    const NodeId g = common[pick(rng)];
    const auto cut_a = std::find(a.path.begin(), a.path.end(), g);
    const auto cut_b = std::find(b.path.begin(), b.path.end(), g);

    RouteChromosome off1, off2;
    off1.path.assign(a.path.begin(), cut_a);
    off1.path.insert(off1.path.end(), cut_b, b.path.end());
    off2.path.assign(b.path.begin(), cut_b);
    off2.path.insert(off2.path.end(), cut_a, a.path.end());
    off1.path = remove_loops(std::move(off1.path));
    off2.path = remove_loops(std::move(off2.path));
    return {off1, off2};
}

RouteChromosome mutate(const TopologySnapshot& graph, const RouteChromosome& ch, Rng& rng) {
    const size_t len = ch.path.size();
    size_t point = 0;  // len == 2: regrow everything after the source
    if (len > 2) point = std::uniform_int_distribution<size_t>(1, len - 2)(rng);

    const NodeId d = ch.path.back();
    const auto adj = build_adjacency(graph);
    std::vector<char> prefix_mask(graph.node_count, 0);
    for (size_t i = 0; i <= point; ++i) prefix_mask[ch.path[i]] = 1;

    std::vector<char> visited(graph.node_count, 0);
    std::vector<NodeId> suffix;
    for (int attempt = 0; attempt < 20; ++attempt) {
        visited = prefix_mask;
        suffix.clear();
        if (walk_once(adj, ch.path[point], d, visited, suffix, rng)) {
            RouteChromosome out;
            out.path.assign(ch.path.begin(), ch.path.begin() + point + 1);
            out.path.insert(out.path.end(), suffix.begin(), suffix.end());
            return out;
        }
    }
    return ch;  // no avoiding walk found
}

void evolve_one_generation(Population& population, const TopologySnapshot& graph,
                           const GaParams& params, Rng& rng, const SchemeHook& hook) {
    const size_t n = population.members.size();

    // E(t-1) enters as population.elite: best of the previous generation
    // under that generation's environment.
    RouteChromosome elite_prev = population.elite;

    for (auto& member : population.members) evaluate(graph, member);

    std::vector<RouteChromosome> pool = select_parents(population, graph, rng);
    std::shuffle(pool.begin(), pool.end(), rng);

    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (size_t i = 0; i + 1 < pool.size(); i += 2) {
        if (coin(rng) < params.crossover_prob) {
            auto [off1, off2] = crossover(pool[i], pool[i + 1], rng);
            pool[i] = std::move(off1);
            pool[i + 1] = std::move(off2);
        }
    }
    for (auto& member : pool)
        if (coin(rng) < params.mutation_prob) member = mutate(graph, member, rng);

    population.members = std::move(pool);
    for (auto& member : population.members) evaluate(graph, member);

    if (hook) hook(population, graph, params, rng);

    // Unconditional elitism: restore E(t-1) over the current worst if it is
    // still feasible and beats the current best.
    const double elite_fit = fitness(graph, elite_prev);
    if (elite_fit > 0.0) {
        size_t best_idx = 0, worst_idx = 0;
        double best_fit = -1.0, worst_fit = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < n; ++i) {
            const double f = evaluate(graph, population.members[i]);
            if (f > best_fit) {
                best_fit = f;
                best_idx = i;
            }
            if (f <= worst_fit) {
                worst_fit = f;
                worst_idx = i;
            }
        }
        (void)best_idx;
        if (elite_fit > best_fit) {
            elite_prev.cached_fitness = elite_fit;
            elite_prev.eval_env = graph.env_index;
            population.members[worst_idx] = elite_prev;
        }
    }

    population.elite = population.best(graph);
    ++population.generation;
}

}  // namespace dspr
