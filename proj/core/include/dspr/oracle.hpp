#pragma once

#include <string>
#include <vector>

#include "dspr/chromosome.hpp"
#include "dspr/topology.hpp"

namespace dspr {

/// Exact shortest-path answer: cost is +inf and path empty when unreachable.
struct OracleResult {
    double cost = 0.0;
    std::vector<NodeId> path;

    bool reachable() const { return !path.empty(); }
};

/// Exact minimum-cost path over active edges. Ties resolved toward the
/// lexicographically smallest node sequence.
OracleResult dijkstra(const TopologySnapshot& graph, NodeId s, NodeId d);

/// Brute-force oracle: depth-first enumeration of every loop-free s-d path.
/// Refuses graphs with more than node_cap active nodes.
OracleResult enumerate_all_paths(const TopologySnapshot& graph, NodeId s, NodeId d,
                                 int node_cap = 12);

/// Counts all loop-free s-d paths (test support for the enumerator).
long count_all_paths(const TopologySnapshot& graph, NodeId s, NodeId d, int node_cap = 12);

/// Normalized solution quality: opt_cost / best_cost, 0 for an infeasible
/// best. Equals 1 exactly at the optimum.
double quality(double best_cost, double opt_cost);

/// One CSV row of the experiment trace.
struct GenerationRecord {
    std::string scheme;
    int replication = 0;
    int generation = 0;
    int env_index = 0;
    double best_cost = 0.0;  // +inf when the best member is infeasible
    double best_fitness = 0.0;
    double quality = 0.0;
    double feasible_fraction = 0.0;
};

/// Mean quality over all generations of one replication.
double offline_performance(const std::vector<GenerationRecord>& records);

}  // namespace dspr
