#pragma once

#include <vector>

#include "dspr/topology.hpp"

namespace dspr {

/// A candidate route: loop-free node-id path from source to destination.
struct RouteChromosome {
    std::vector<NodeId> path;
    double cached_fitness = 0.0;
    int eval_env = -1;  // env_index the cache was computed under

    bool operator==(const RouteChromosome& other) const { return path == other.path; }
};

/// Left-to-right loop excision: when a node reappears, the segment after its
/// first occurrence up to the repeat is cut. Idempotent; endpoints preserved.
std::vector<NodeId> remove_loops(std::vector<NodeId> path);

/// True iff the path has >= 2 nodes, no repeats, and the stated endpoints.
bool is_valid_route(const std::vector<NodeId>& path, NodeId s, NodeId d);

/// Sum of edge costs along the path, or +inf if any hop is not a current
/// active edge.
double path_cost(const TopologySnapshot& graph, const std::vector<NodeId>& path);

/// Reciprocal-cost fitness: (sum of edge costs)^-1 for feasible paths, 0
/// for paths broken under the current environment.
double fitness(const TopologySnapshot& graph, const RouteChromosome& ch);

/// fitness() with per-environment caching on the chromosome.
double evaluate(const TopologySnapshot& graph, RouteChromosome& ch);

}  // namespace dspr
