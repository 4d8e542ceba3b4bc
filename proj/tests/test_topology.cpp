#include <cmath>
#include <sstream>

#include "doctest.h"
#include "dspr/topology.hpp"
#include "test_util.hpp"

using namespace dspr;

namespace {

RwpParams small_params(int nodes, double range = 250.0) {
    RwpParams p;
    p.node_count = nodes;
    p.radio_range = range;
    return p;
}

}  // namespace

TEST_CASE("generate_rwp_topology basic shapes") {
    Rng rng(1);

    SUBCASE("single node has no edges") {
        auto [snap, state] = generate_rwp_topology(small_params(1), rng);
        CHECK(snap.edges.empty());
        CHECK(snap.positions.size() == 1);
        CHECK(snap.positions[0].x >= 0.0);
        CHECK(snap.positions[0].x <= 1000.0);
    }

    SUBCASE("two nodes inside range give exactly one edge") {
        RwpParams p = small_params(2, 250.0);
        p.area_width = p.area_height = 10.0;  // tiny area, nodes always in range
        auto [snap, state] = generate_rwp_topology(p, rng);
        CHECK(snap.edges.size() == 1);
    }

    SUBCASE("range covering the whole area gives a complete graph") {
        RwpParams p = small_params(50);
        p.radio_range = std::hypot(p.area_width, p.area_height);
        auto [snap, state] = generate_rwp_topology(p, rng);
        CHECK(snap.edges.size() == 50 * 49 / 2);
    }

    SUBCASE("edge predicate matches the range rule exactly") {
        auto [snap, state] = generate_rwp_topology(small_params(40), rng);
        for (NodeId i = 0; i < snap.node_count; ++i) {
            for (NodeId j = i + 1; j < snap.node_count; ++j) {
                const double dist = std::hypot(snap.positions[i].x - snap.positions[j].x,
                                               snap.positions[i].y - snap.positions[j].y);
                CHECK(snap.has_edge(i, j) == (dist <= 250.0));
            }
        }
    }
}

TEST_CASE("advance_mobility kinematics") {
    Rng rng(2);
    RwpParams p = small_params(1);
    MobilityState st;
    st.position = {{100.0, 100.0}};
    st.waypoint = {{200.0, 100.0}};
    st.speed = {4.0};
    st.pause_remaining = {0.0};

    SUBCASE("short step moves speed*dt along the straight line") {
        advance_mobility(st, p, 3.0, rng);
        CHECK(st.position[0].x == doctest::Approx(112.0));
        CHECK(st.position[0].y == doctest::Approx(100.0));
    }

    SUBCASE("paused node stays put and the pause drains") {
        st.position[0] = st.waypoint[0];
        st.pause_remaining[0] = 5.0;
        advance_mobility(st, p, 3.0, rng);
        CHECK(st.position[0].x == doctest::Approx(200.0));
        CHECK(st.pause_remaining[0] == doctest::Approx(2.0));
    }

    SUBCASE("exact arrival snaps onto the waypoint") {
        st.speed[0] = 1.0;
        advance_mobility(st, p, 100.0, rng);
        CHECK(st.position[0].x == doctest::Approx(200.0));
        CHECK(st.position[0].y == doctest::Approx(100.0));
    }

    SUBCASE("positions stay inside the area over long random schedules") {
        RwpParams many = small_params(15);
        Rng r(99);
        auto [snap, state] = generate_rwp_topology(many, r);
        std::uniform_real_distribution<double> dt(0.1, 30.0);
        for (int step = 0; step < 300; ++step) {
            advance_mobility(state, many, dt(r), r);
            for (const auto& pos : state.position) {
                CHECK(pos.x >= 0.0);
                CHECK(pos.x <= many.area_width);
                CHECK(pos.y >= 0.0);
                CHECK(pos.y <= many.area_height);
            }
        }
    }
}

TEST_CASE("rebuild_edges") {
    Rng rng(3);

    SUBCASE("all nodes out of range leaves no edges") {
        RwpParams p = small_params(3, 0.5);
        TopologySnapshot snap = test::make_graph(3, {});
        snap.positions = {{0, 0}, {100, 0}, {0, 100}};
        rebuild_edges(snap, p, rng);
        CHECK(snap.edges.empty());
        CHECK(snap.env_index == 1);
    }

    SUBCASE("unit cost model assigns cost 1 everywhere") {
        RwpParams p = small_params(4, 1000.0);
        p.cost_model = CostModel::Unit;
        TopologySnapshot snap = test::make_graph(4, {});
        rebuild_edges(snap, p, rng);
        CHECK(snap.edges.size() == 6);
        for (const auto& [key, cost] : snap.edges) CHECK(cost == 1.0);
    }

    SUBCASE("surviving edges keep their random cost") {
        RwpParams p = small_params(3, 10.0);
        p.cost_model = CostModel::UniformRandom;
        p.cost_lo = 1.0;
        p.cost_hi = 9.0;
        TopologySnapshot snap = test::make_graph(3, {});
        snap.positions = {{0, 0}, {5, 0}, {500, 0}};
        recompute_edges(snap, p, rng);
        REQUIRE(snap.edges.size() == 1);
        const double old_cost = snap.edges.begin()->second;
        snap.positions[2] = {5, 5};  // node 2 moves into range; edge (0,1) survives
        rebuild_edges(snap, p, rng);
        CHECK(snap.edges.size() == 3);
        CHECK(snap.edges.at({0, 1}) == old_cost);
    }
}

TEST_CASE("apply_node_toggle") {
    Rng rng(4);
    RwpParams p = small_params(6, 10000.0);
    TopologySnapshot snap;
    {
        Rng gen(5);
        auto [s, st] = generate_rwp_topology(p, gen);
        snap = s;
    }
    const NodeId s = 0, d = 5;

    SUBCASE("toggling all internal nodes leaves at most the direct edge") {
        TopologySnapshot g = snap;
        apply_node_toggle(g, 4, s, d, rng);
        for (NodeId v = 1; v <= 4; ++v) CHECK_FALSE(g.is_active(v));
        for (const auto& [key, cost] : g.edges) {
            CHECK(key.first == s);
            CHECK(key.second == d);
        }
        CHECK(g.env_index == snap.env_index + 1);
    }

    SUBCASE("double toggle of the same nodes restores the active set") {
        TopologySnapshot g = snap;
        Rng r1(7), r2(7);  // same draws pick the same node set
        apply_node_toggle(g, 3, s, d, r1);
        apply_node_toggle(g, 3, s, d, r2);
        for (NodeId v = 0; v < g.node_count; ++v) CHECK(g.is_active(v) == snap.is_active(v));
    }

    SUBCASE("woken node regains its edges after a recompute") {
        TopologySnapshot g = snap;
        Rng r1(7), r2(7);
        apply_node_toggle(g, 1, s, d, r1);
        const size_t without = g.edges.size();
        apply_node_toggle(g, 1, s, d, r2);  // same node wakes up
        recompute_edges(g, p, rng);
        CHECK(g.edges.size() > without);
        CHECK(g.edges.size() == snap.edges.size());
    }

    SUBCASE("k out of range is rejected") {
        TopologySnapshot g = snap;
        CHECK_THROWS_AS(apply_node_toggle(g, 0, s, d, rng), std::invalid_argument);
        CHECK_THROWS_AS(apply_node_toggle(g, 5, s, d, rng), std::invalid_argument);
    }
}

TEST_CASE("ensure_sd_connected") {
    SUBCASE("direct edge connects") {
        auto g = test::make_graph(2, {{0, 1, 1.0}});
        CHECK(ensure_sd_connected(g, 0, 1));
    }

    SUBCASE("empty edge set does not") {
        auto g = test::make_graph(3, {});
        CHECK_FALSE(ensure_sd_connected(g, 0, 2));
    }

    SUBCASE("inactive endpoint is a parameter error") {
        auto g = test::make_graph(2, {{0, 1, 1.0}});
        g.active[1] = 0;
        CHECK_THROWS_AS(ensure_sd_connected(g, 0, 1), std::invalid_argument);
    }

    SUBCASE("matches transitive closure by repeated relaxation") {
        Rng rng(11);
        for (int trial = 0; trial < 50; ++trial) {
            auto g = test::random_graph(20, 0.12, rng);
            // Independent reachability: boolean closure by edge relaxation.
            std::vector<char> reach(20, 0);
            reach[0] = 1;
            bool grew = true;
            while (grew) {
                grew = false;
                for (const auto& [key, cost] : g.edges) {
                    (void)cost;
                    if (reach[key.first] != reach[key.second]) {
                        reach[key.first] = reach[key.second] = 1;
                        grew = true;
                    }
                }
            }
            CHECK(ensure_sd_connected(g, 0, 19) == static_cast<bool>(reach[19]));
        }
    }
}

TEST_CASE("topology serialization") {
    Rng rng(12);
    auto [snap, state] = generate_rwp_topology(small_params(25), rng);
    snap.active[3] = 0;
    RwpParams p = small_params(25);
    recompute_edges(snap, p, rng);

    SUBCASE("round trip preserves structure") {
        std::stringstream ss;
        save_topology(snap, ss);
        TopologySnapshot back = load_topology(ss);
        CHECK(back.node_count == snap.node_count);
        CHECK(back.edges.size() == snap.edges.size());
        for (NodeId v = 0; v < snap.node_count; ++v) {
            CHECK(back.is_active(v) == snap.is_active(v));
            CHECK(back.positions[v].x == doctest::Approx(snap.positions[v].x).epsilon(1e-6));
        }
        for (const auto& [key, cost] : snap.edges) {
            REQUIRE(back.edges.count(key) == 1);
            CHECK(back.edges.at(key) == doctest::Approx(cost).epsilon(1e-6));
        }
    }

    SUBCASE("edge referencing an unknown node fails with a line number") {
        std::stringstream ss("nodes 2\nnode 0 0 0 1\nnode 1 1 0 1\nedges 1\nedge 0 7 1.0\n");
        CHECK_THROWS_WITH_AS(load_topology(ss), doctest::Contains("line 5"), std::runtime_error);
    }

    SUBCASE("negative cost is rejected") {
        std::stringstream ss("nodes 2\nnode 0 0 0 1\nnode 1 1 0 1\nedges 1\nedge 0 1 -3.0\n");
        CHECK_THROWS_AS(load_topology(ss), std::runtime_error);
    }

    SUBCASE("comments and blank lines are skipped") {
        std::stringstream ss("# header\nnodes 2\n\nnode 0 0 0 1\nnode 1 1 0 1\n# mid\nedges 1\nedge 0 1 2.5\n");
        TopologySnapshot g = load_topology(ss);
        CHECK(g.edges.at({0, 1}) == 2.5);
    }
}
