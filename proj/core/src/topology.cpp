#include "dspr/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dspr {

namespace {

std::pair<NodeId, NodeId> edge_key(NodeId i, NodeId j) {
    return i < j ? std::make_pair(i, j) : std::make_pair(j, i);
}

double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

double draw_cost(CostModel model, double dist, const RwpParams& p, Rng& rng) {
    switch (model) {
        case CostModel::Unit:
            return 1.0;
        case CostModel::Distance:
            // Coincident nodes would yield a zero cost; keep it positive.
            return std::max(dist, 1e-9);
        case CostModel::UniformRandom:
            return std::uniform_real_distribution<double>(p.cost_lo, p.cost_hi)(rng);
    }
    throw std::logic_error("unknown cost model");
}

}  // namespace

void RwpParams::validate() const {
    if (area_width <= 0 || area_height <= 0) throw std::invalid_argument("area dimensions must be positive");
    if (radio_range <= 0) throw std::invalid_argument("radio range must be positive");
    if (speed_min <= 0 || speed_min > speed_max) throw std::invalid_argument("need 0 < speed_min <= speed_max");
    if (pause_time < 0) throw std::invalid_argument("pause_time must be >= 0");
    if (node_count < 1) throw std::invalid_argument("node_count must be >= 1");
    if (cost_model == CostModel::UniformRandom && (cost_lo <= 0 || cost_lo > cost_hi))
        throw std::invalid_argument("need 0 < cost_lo <= cost_hi");
}

void DynamicsSchedule::validate() const {
    if (change_interval < 1) throw std::invalid_argument("change_interval must be >= 1");
    if (total_changes < 0) throw std::invalid_argument("total_changes must be >= 0");
    if (change_mode == ChangeMode::NodeToggle && toggle_count < 1)
        throw std::invalid_argument("toggle count must be >= 1");
    if (change_mode == ChangeMode::MobilityAdvance && mobility_dt <= 0)
        throw std::invalid_argument("mobility dt must be positive");
}

bool TopologySnapshot::has_edge(NodeId i, NodeId j) const {
    return edges.count(edge_key(i, j)) != 0;
}

double TopologySnapshot::edge_cost(NodeId i, NodeId j) const {
    auto it = edges.find(edge_key(i, j));
    return it == edges.end() ? -1.0 : it->second;
}

std::vector<NodeId> TopologySnapshot::active_neighbors(NodeId v) const {
    std::vector<NodeId> out;
    for (const auto& [key, cost] : edges) {
        (void)cost;
        if (key.first == v)
            out.push_back(key.second);
        else if (key.second == v)
            out.push_back(key.first);
    }
    return out;
}

std::pair<TopologySnapshot, MobilityState> generate_rwp_topology(const RwpParams& params, Rng& rng) {
    params.validate();
    const int n = params.node_count;

    std::uniform_real_distribution<double> ux(0.0, params.area_width);
    std::uniform_real_distribution<double> uy(0.0, params.area_height);
    std::uniform_real_distribution<double> us(params.speed_min, params.speed_max);

    MobilityState state;
    state.position.resize(n);
    state.waypoint.resize(n);
    state.speed.resize(n);
    state.pause_remaining.assign(n, 0.0);
    for (int v = 0; v < n; ++v) {
        state.position[v] = {ux(rng), uy(rng)};
        state.waypoint[v] = {ux(rng), uy(rng)};
        state.speed[v] = us(rng);
    }

    TopologySnapshot snapshot;
    snapshot.node_count = n;
    snapshot.positions = state.position;
    snapshot.active.assign(n, 1);
    snapshot.env_index = 0;
    recompute_edges(snapshot, params, rng);
    return {std::move(snapshot), std::move(state)};
}

void advance_mobility(MobilityState& state, const RwpParams& params, double dt, Rng& rng) {
    if (dt <= 0) throw std::invalid_argument("dt must be positive");
    std::uniform_real_distribution<double> ux(0.0, params.area_width);
    std::uniform_real_distribution<double> uy(0.0, params.area_height);
    std::uniform_real_distribution<double> us(params.speed_min, params.speed_max);

    const size_t n = state.position.size();
    for (size_t v = 0; v < n; ++v) {
        double left = dt;
        while (left > 1e-12) {
            if (state.pause_remaining[v] > 0.0) {
                const double wait = std::min(state.pause_remaining[v], left);
                state.pause_remaining[v] -= wait;
                left -= wait;
                if (left <= 1e-12) break;
                // Pause over: pick the next leg.
                state.pause_remaining[v] = 0.0;
                state.waypoint[v] = {ux(rng), uy(rng)};
                state.speed[v] = us(rng);
            }
            const double dx = state.waypoint[v].x - state.position[v].x;
            const double dy = state.waypoint[v].y - state.position[v].y;
            const double dist = std::hypot(dx, dy);
            const double step = state.speed[v] * left;
            if (step + 1e-12 >= dist) {
                // Arrival: snap to the waypoint and start pausing.
                state.position[v] = state.waypoint[v];
                left -= dist / state.speed[v];
                state.pause_remaining[v] = params.pause_time;
                if (params.pause_time == 0.0) {
                    state.waypoint[v] = {ux(rng), uy(rng)};
                    state.speed[v] = us(rng);
                }
            } else {
                state.position[v].x += dx / dist * step;
                state.position[v].y += dy / dist * step;
                left = 0.0;
            }
        }
    }
}

void recompute_edges(TopologySnapshot& snapshot, const RwpParams& params, Rng& rng) {
    std::map<std::pair<NodeId, NodeId>, double> next;
    for (NodeId i = 0; i < snapshot.node_count; ++i) {
        if (!snapshot.is_active(i)) continue;
        for (NodeId j = i + 1; j < snapshot.node_count; ++j) {
            if (!snapshot.is_active(j)) continue;
            const double dist = distance(snapshot.positions[i], snapshot.positions[j]);
            if (dist > params.radio_range) continue;
            const auto key = std::make_pair(i, j);
            if (params.cost_model == CostModel::UniformRandom) {
                auto prev = snapshot.edges.find(key);
                next[key] = prev != snapshot.edges.end() ? prev->second
                                                        : draw_cost(params.cost_model, dist, params, rng);
            } else {
                next[key] = draw_cost(params.cost_model, dist, params, rng);
            }
        }
    }
    snapshot.edges = std::move(next);
}

void rebuild_edges(TopologySnapshot& snapshot, const RwpParams& params, Rng& rng) {
    recompute_edges(snapshot, params, rng);
    ++snapshot.env_index;
}

void apply_node_toggle(TopologySnapshot& snapshot, int k, NodeId s, NodeId d, Rng& rng) {
    if (k < 1 || k > snapshot.node_count - 2)
        throw std::invalid_argument("toggle count must be in [1, node_count - 2]");
    std::vector<NodeId> candidates;
    for (NodeId v = 0; v < snapshot.node_count; ++v)
        if (v != s && v != d) candidates.push_back(v);
    // Uniform k-subset by partial Fisher-Yates.
    for (int i = 0; i < k; ++i) {
        std::uniform_int_distribution<size_t> pick(i, candidates.size() - 1);
        std::swap(candidates[i], candidates[pick(rng)]);
        const NodeId v = candidates[i];
        snapshot.active[v] = snapshot.active[v] ? 0 : 1;
    }
    for (auto it = snapshot.edges.begin(); it != snapshot.edges.end();) {
        if (!snapshot.is_active(it->first.first) || !snapshot.is_active(it->first.second))
            it = snapshot.edges.erase(it);
        else
            ++it;
    }
    ++snapshot.env_index;
}

bool ensure_sd_connected(const TopologySnapshot& snapshot, NodeId s, NodeId d) {
    if (s == d) throw std::invalid_argument("source equals destination");
    if (!snapshot.is_active(s) || !snapshot.is_active(d))
        throw std::invalid_argument("endpoint is not active");
    std::vector<std::vector<NodeId>> adj(snapshot.node_count);
    for (const auto& [key, cost] : snapshot.edges) {
        (void)cost;
        adj[key.first].push_back(key.second);
        adj[key.second].push_back(key.first);
    }
    std::vector<char> seen(snapshot.node_count, 0);
    std::deque<NodeId> queue{s};
    seen[s] = 1;
    while (!queue.empty()) {
        const NodeId u = queue.front();
        queue.pop_front();
        if (u == d) return true;
        for (NodeId v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                queue.push_back(v);
            }
    }
    return false;
}

void save_topology(const TopologySnapshot& snapshot, std::ostream& out) {
    out << "nodes " << snapshot.node_count << "\n";
    char buf[128];
    for (NodeId v = 0; v < snapshot.node_count; ++v) {
        std::snprintf(buf, sizeof(buf), "node %d %.6f %.6f %d\n", v, snapshot.positions[v].x,
                      snapshot.positions[v].y, snapshot.is_active(v) ? 1 : 0);
        out << buf;
    }
    out << "edges " << snapshot.edges.size() << "\n";
    for (const auto& [key, cost] : snapshot.edges) {
        std::snprintf(buf, sizeof(buf), "edge %d %d %.6f\n", key.first, key.second, cost);
        out << buf;
    }
}

void save_topology(const TopologySnapshot& snapshot, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    save_topology(snapshot, out);
}

namespace {

struct LineReader {
    std::istream& in;
    int line_no = 0;

    // Next non-comment, non-blank line; false at EOF.
    bool next(std::string& line) {
        while (std::getline(in, line)) {
            ++line_no;
            const auto pos = line.find_first_not_of(" \t\r");
            if (pos == std::string::npos || line[pos] == '#') continue;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw std::runtime_error("topology parse error at line " + std::to_string(line_no) + ": " + what);
    }
};

}  // namespace

TopologySnapshot load_topology(std::istream& in) {
    LineReader reader{in};
    std::string line;
    if (!reader.next(line)) reader.fail("missing 'nodes' header");

    TopologySnapshot snapshot;
    {
        std::istringstream ss(line);
        std::string tag;
        if (!(ss >> tag >> snapshot.node_count) || tag != "nodes" || snapshot.node_count < 1)
            reader.fail("expected 'nodes N'");
    }
    snapshot.positions.resize(snapshot.node_count);
    snapshot.active.assign(snapshot.node_count, 0);
    std::vector<char> seen(snapshot.node_count, 0);
    for (int i = 0; i < snapshot.node_count; ++i) {
        if (!reader.next(line)) reader.fail("unexpected end of file in node list");
        std::istringstream ss(line);
        std::string tag;
        NodeId id;
        double x, y;
        int act;
        if (!(ss >> tag >> id >> x >> y >> act) || tag != "node") reader.fail("expected 'node <id> <x> <y> <active>'");
        if (id < 0 || id >= snapshot.node_count) reader.fail("node id out of range");
        if (seen[id]) reader.fail("duplicate node id");
        if (act != 0 && act != 1) reader.fail("active flag must be 0 or 1");
        seen[id] = 1;
        snapshot.positions[id] = {x, y};
        snapshot.active[id] = static_cast<std::uint8_t>(act);
    }

    if (!reader.next(line)) reader.fail("missing 'edges' header");
    size_t edge_count = 0;
    {
        std::istringstream ss(line);
        std::string tag;
        if (!(ss >> tag >> edge_count) || tag != "edges") reader.fail("expected 'edges M'");
    }
    for (size_t e = 0; e < edge_count; ++e) {
        if (!reader.next(line)) reader.fail("unexpected end of file in edge list");
        std::istringstream ss(line);
        std::string tag;
        NodeId i, j;
        double cost;
        if (!(ss >> tag >> i >> j >> cost) || tag != "edge") reader.fail("expected 'edge <i> <j> <cost>'");
        if (i < 0 || i >= snapshot.node_count || j < 0 || j >= snapshot.node_count)
            reader.fail("edge references unknown node");
        if (i == j) reader.fail("self-loop edge");
        if (!snapshot.is_active(i) || !snapshot.is_active(j)) reader.fail("edge endpoint is inactive");
        if (!(cost > 0) || !std::isfinite(cost)) reader.fail("edge cost must be positive and finite");
        const auto key = i < j ? std::make_pair(i, j) : std::make_pair(j, i);
        if (snapshot.edges.count(key)) reader.fail("duplicate edge");
        snapshot.edges[key] = cost;
    }
    return snapshot;
}

TopologySnapshot load_topology(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return load_topology(in);
}

}  // namespace dspr
