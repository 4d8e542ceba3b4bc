#include "dspr/oracle.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace dspr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct CostAdjacency {
    std::vector<std::vector<std::pair<NodeId, double>>> adj;

    explicit CostAdjacency(const TopologySnapshot& graph) : adj(graph.node_count) {
        for (const auto& [key, cost] : graph.edges) {
            adj[key.first].emplace_back(key.second, cost);
            adj[key.second].emplace_back(key.first, cost);
        }
        for (auto& list : adj) std::sort(list.begin(), list.end());
    }
};

std::vector<double> dijkstra_distances(const CostAdjacency& graph, NodeId from) {
    std::vector<double> dist(graph.adj.size(), kInf);
    dist[from] = 0.0;
    using Item = std::pair<double, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
    queue.emplace(0.0, from);
    while (!queue.empty()) {
        auto [d, u] = queue.top();
        queue.pop();
        if (d > dist[u]) continue;
        for (const auto& [v, cost] : graph.adj[u]) {
            const double nd = d + cost;
            if (nd < dist[v]) {
                dist[v] = nd;
                queue.emplace(nd, v);
            }
        }
    }
    return dist;
}

}  // namespace

OracleResult dijkstra(const TopologySnapshot& graph, NodeId s, NodeId d) {
    if (!graph.is_active(s) || !graph.is_active(d))
        throw std::invalid_argument("endpoint is not active");
    const CostAdjacency adj(graph);
    // Distances to d; the path is then rebuilt greedily from s, taking the
    // smallest next node that stays on a shortest path. Exact float equality
    // is met by at least the relaxing predecessor, so the walk terminates.
    const std::vector<double> to_d = dijkstra_distances(adj, d);
    OracleResult result;
    if (to_d[s] == kInf) {
        result.cost = kInf;
        return result;
    }
    result.cost = to_d[s];
    NodeId u = s;
    result.path.push_back(u);
    while (u != d) {
        NodeId next = -1;
        for (const auto& [v, cost] : adj.adj[u]) {
            if (cost + to_d[v] == to_d[u]) {
                next = v;
                break;  // neighbors sorted: first hit is the smallest id
            }
        }
        if (next == -1) throw std::logic_error("shortest-path reconstruction failed");
        u = next;
        result.path.push_back(u);
    }
    return result;
}

namespace {

struct Enumerator {
    const CostAdjacency& adj;
    NodeId d;
    std::vector<char> visited;
    std::vector<NodeId> current;
    OracleResult best;
    long paths_seen = 0;

    Enumerator(const CostAdjacency& a, NodeId dest, size_t n) : adj(a), d(dest), visited(n, 0) {
        best.cost = kInf;
    }

    // Cost of the completed path, accumulated from the d end so the float
    // rounding matches dijkstra's relaxation order on the same path.
    double path_cost_from_dest() const {
        double total = 0.0;
        for (size_t i = current.size() - 1; i > 0; --i) {
            const auto& row = adj.adj[current[i - 1]];
            const auto it = std::lower_bound(row.begin(), row.end(),
                                             std::make_pair(current[i], -kInf));
            total += it->second;
        }
        return total;
    }

    void dfs(NodeId u) {
        if (u == d) {
            ++paths_seen;
            const double cost = path_cost_from_dest();
            if (cost < best.cost || (cost == best.cost && current < best.path)) {
                best.cost = cost;
                best.path = current;
            }
            return;
        }
        for (const auto& [v, cost] : adj.adj[u]) {
            (void)cost;
            if (visited[v]) continue;
            visited[v] = 1;
            current.push_back(v);
            dfs(v);
            current.pop_back();
            visited[v] = 0;
        }
    }
};

Enumerator run_enumeration(const TopologySnapshot& graph, NodeId s, NodeId d, int node_cap) {
    int active_count = 0;
    for (NodeId v = 0; v < graph.node_count; ++v)
        if (graph.is_active(v)) ++active_count;
    if (active_count > node_cap)
        throw std::invalid_argument("graph exceeds enumeration node cap");
    const CostAdjacency adj(graph);
    Enumerator e(adj, d, graph.node_count);
    e.visited[s] = 1;
    e.current.push_back(s);
    e.dfs(s);
    return e;
}

}  // namespace

OracleResult enumerate_all_paths(const TopologySnapshot& graph, NodeId s, NodeId d, int node_cap) {
    Enumerator e = run_enumeration(graph, s, d, node_cap);
    if (e.best.cost == kInf) e.best.path.clear();
    return std::move(e.best);
}

long count_all_paths(const TopologySnapshot& graph, NodeId s, NodeId d, int node_cap) {
    return run_enumeration(graph, s, d, node_cap).paths_seen;
}

double quality(double best_cost, double opt_cost) {
    if (!(opt_cost > 0) || opt_cost == kInf)
        throw std::logic_error("oracle cost must be positive and finite");
    if (best_cost == kInf) return 0.0;
    return opt_cost / best_cost;
}

double offline_performance(const std::vector<GenerationRecord>& records) {
    if (records.empty()) throw std::invalid_argument("offline performance needs at least one record");
    double total = 0.0;
    for (const auto& r : records) total += r.quality;
    return total / static_cast<double>(records.size());
}

}  // namespace dspr
