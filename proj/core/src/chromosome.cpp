#include "dspr/chromosome.hpp"

#include <limits>
#include <unordered_map>
#include <unordered_set>

namespace dspr {

std::vector<NodeId> remove_loops(std::vector<NodeId> path) {
    std::vector<NodeId> out;
    out.reserve(path.size());
    std::unordered_map<NodeId, size_t> first_pos;
    for (NodeId v : path) {
        auto it = first_pos.find(v);
        if (it != first_pos.end()) {
            // Cut everything after the first occurrence of v.
            for (size_t i = it->second + 1; i < out.size(); ++i) first_pos.erase(out[i]);
            out.resize(it->second + 1);
        } else {
            first_pos[v] = out.size();
            out.push_back(v);
        }
    }
    return out;
}

bool is_valid_route(const std::vector<NodeId>& path, NodeId s, NodeId d) {
    if (path.size() < 2) return false;
    if (path.front() != s || path.back() != d) return false;
    std::unordered_set<NodeId> seen;
    for (NodeId v : path)
        if (!seen.insert(v).second) return false;
    return true;
}

double path_cost(const TopologySnapshot& graph, const std::vector<NodeId>& path) {
    if (path.size() < 2) return std::numeric_limits<double>::infinity();
    double total = 0.0;
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        const double c = graph.edge_cost(path[i], path[i + 1]);
        if (c < 0) return std::numeric_limits<double>::infinity();
        total += c;
    }
    return total;
}

double fitness(const TopologySnapshot& graph, const RouteChromosome& ch) {
    const double cost = path_cost(graph, ch.path);
    return std::isfinite(cost) ? 1.0 / cost : 0.0;
}

double evaluate(const TopologySnapshot& graph, RouteChromosome& ch) {
    if (ch.eval_env != graph.env_index) {
        ch.cached_fitness = fitness(graph, ch);
        ch.eval_env = graph.env_index;
    }
    return ch.cached_fitness;
}

}  // namespace dspr
