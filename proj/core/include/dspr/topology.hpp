#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace dspr {

using Rng = std::mt19937_64;
using NodeId = int;

enum class CostModel { Unit, Distance, UniformRandom };

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Parameters of the random waypoint mobility model and link derivation.
struct RwpParams {
    double area_width = 1000.0;
    double area_height = 1000.0;
    double radio_range = 250.0;
    double speed_min = 1.0;
    double speed_max = 10.0;
    double pause_time = 5.0;
    int node_count = 50;
    CostModel cost_model = CostModel::Distance;
    double cost_lo = 1.0;   // uniform_random only
    double cost_hi = 10.0;  // uniform_random only

    void validate() const;  // throws std::invalid_argument
};

/// Weighted undirected graph of wireless nodes at planar positions.
/// Edge keys are (min, max) node-id pairs; costs strictly positive.
struct TopologySnapshot {
    int node_count = 0;
    std::vector<Point> positions;
    std::vector<std::uint8_t> active;
    std::map<std::pair<NodeId, NodeId>, double> edges;
    int env_index = 0;

    bool is_active(NodeId v) const { return active[static_cast<size_t>(v)] != 0; }
    bool has_edge(NodeId i, NodeId j) const;
    /// Cost of edge (i, j); negative if the edge does not exist.
    double edge_cost(NodeId i, NodeId j) const;
    std::vector<NodeId> active_neighbors(NodeId v) const;
};

/// Per-node kinematic state of the random waypoint model.
struct MobilityState {
    std::vector<Point> position;
    std::vector<Point> waypoint;
    std::vector<double> speed;
    std::vector<double> pause_remaining;
};

enum class ChangeMode { NodeToggle, MobilityAdvance };

/// When and how the environment changes during a run.
struct DynamicsSchedule {
    int change_interval = 10;  // generations between changes
    ChangeMode change_mode = ChangeMode::NodeToggle;
    int toggle_count = 2;      // nodes flipped per node_toggle change
    double mobility_dt = 1.0;  // seconds advanced per mobility change
    int total_changes = 0;

    void validate() const;
};

std::pair<TopologySnapshot, MobilityState> generate_rwp_topology(const RwpParams& params, Rng& rng);

/// Moves every node toward its waypoint for dt seconds, handling pauses,
/// arrivals and redraws of waypoint/speed. Positions stay inside the area.
void advance_mobility(MobilityState& state, const RwpParams& params, double dt, Rng& rng);

/// Recomputes the edge set from the range rule without touching env_index.
/// In uniform_random cost mode surviving edges keep their previous cost.
void recompute_edges(TopologySnapshot& snapshot, const RwpParams& params, Rng& rng);

/// recompute_edges plus an env_index increment (one environment change).
void rebuild_edges(TopologySnapshot& snapshot, const RwpParams& params, Rng& rng);

/// Flips the active flag of k uniformly chosen nodes other than s and d,
/// drops edges incident to sleeping nodes, and increments env_index.
/// Edges of woken nodes reappear on the next recompute_edges call.
void apply_node_toggle(TopologySnapshot& snapshot, int k, NodeId s, NodeId d, Rng& rng);

/// True iff a path of active edges joins s and d.
bool ensure_sd_connected(const TopologySnapshot& snapshot, NodeId s, NodeId d);

void save_topology(const TopologySnapshot& snapshot, std::ostream& out);
void save_topology(const TopologySnapshot& snapshot, const std::string& path);
TopologySnapshot load_topology(std::istream& in);
TopologySnapshot load_topology(const std::string& path);

}  // namespace dspr
