#include <algorithm>
#include <set>

#include "doctest.h"
#include "dspr/ga.hpp"
#include "dspr/oracle.hpp"
#include "test_util.hpp"

using namespace dspr;

TEST_CASE("remove_loops") {
    CHECK(remove_loops({0, 1, 2, 1, 3, 9}) == std::vector<NodeId>{0, 1, 3, 9});
    CHECK(remove_loops({0, 1, 2, 9}) == std::vector<NodeId>{0, 1, 2, 9});
    // Hand-traced left-to-right excision: first repeat is 1 (cuts 2,3), then
    // 2 is fresh again and stays.
    CHECK(remove_loops({0, 1, 2, 3, 1, 2, 9}) == std::vector<NodeId>{0, 1, 2, 9});

    SUBCASE("idempotent on random looped inputs") {
        Rng rng(21);
        std::uniform_int_distribution<int> node(1, 8);
        std::uniform_int_distribution<int> len(0, 12);
        for (int trial = 0; trial < 2000; ++trial) {
            std::vector<NodeId> path{0};
            const int middle = len(rng);
            for (int i = 0; i < middle; ++i) path.push_back(node(rng));
            path.push_back(9);
            const auto once = remove_loops(path);
            CHECK(remove_loops(once) == once);
            std::set<NodeId> unique(once.begin(), once.end());
            CHECK(unique.size() == once.size());
            CHECK(once.front() == 0);
            CHECK(once.back() == 9);
        }
    }
}

TEST_CASE("random_walk_path") {
    SUBCASE("line graph has a unique walk") {
        auto g = test::make_line(3);
        Rng rng(1);
        for (int i = 0; i < 20; ++i)
            CHECK(random_walk_path(g, 0, 2, rng).path == std::vector<NodeId>{0, 1, 2});
    }

    SUBCASE("triangle branches 50/50 at the first step") {
        // Walk tree: first step uniform over {1, 2}; picking 1 forces 1->2.
        auto g = test::make_triangle();
        Rng rng(2);
        int direct = 0;
        const int trials = 10000;
        for (int i = 0; i < trials; ++i)
            if (random_walk_path(g, 0, 2, rng).path.size() == 2) ++direct;
        const double freq = static_cast<double>(direct) / trials;
        CHECK(freq > 0.47);
        CHECK(freq < 0.53);
    }

    SUBCASE("dead-end graph with one corridor always yields the corridor") {
        // 0-1 and 0-3 where 1 is a dead end; only loop-free route is 0-3-4.
        auto g = test::make_graph(5, {{0, 1, 1}, {0, 3, 1}, {3, 4, 1}});
        Rng rng(3);
        for (int i = 0; i < 50; ++i)
            CHECK(random_walk_path(g, 0, 4, rng).path == std::vector<NodeId>{0, 3, 4});
    }

    SUBCASE("unreachable destination exhausts the restart budget") {
        auto g = test::make_graph(4, {{0, 1, 1}, {2, 3, 1}});
        Rng rng(4);
        CHECK_THROWS_AS(random_walk_path(g, 0, 3, rng), RandomWalkError);
        long fallbacks = 0;
        CHECK_THROWS(seed_path(g, 0, 3, rng, &fallbacks));
    }
}

TEST_CASE("fitness is reciprocal path cost") {
    auto g = test::make_graph(4, {{0, 1, 2}, {1, 2, 3}, {2, 3, 5}});
    RouteChromosome ch;
    ch.path = {0, 1, 2, 3};
    CHECK(fitness(g, ch) == doctest::Approx(0.1));

    auto unit = test::make_graph(2, {{0, 1, 1}});
    RouteChromosome direct;
    direct.path = {0, 1};
    CHECK(fitness(unit, direct) == 1.0);

    auto broken = test::make_graph(4, {{0, 1, 2}, {2, 3, 5}});  // edge (1,2) gone
    CHECK(fitness(broken, ch) == 0.0);
}

TEST_CASE("init_population") {
    SUBCASE("n is rejected below 2; line graph with n=2 duplicates the path") {
        auto g = test::make_line(3);
        GaParams params;
        params.population_size = 2;
        Rng rng(5);
        Population pop = init_population(g, 0, 2, params, rng);
        CHECK(pop.members.size() == 2);
        CHECK(pop.members[0].path == std::vector<NodeId>{0, 1, 2});
        CHECK(pop.elite.path == std::vector<NodeId>{0, 1, 2});
    }

    SUBCASE("every member satisfies the chromosome invariants") {
        Rng rng(6);
        for (int trial = 0; trial < 20; ++trial) {
            auto g = test::random_graph(15, 0.3, rng);
            if (!ensure_sd_connected(g, 0, 14)) continue;
            GaParams params;
            params.population_size = 20;
            Population pop = init_population(g, 0, 14, params, rng);
            for (const auto& m : pop.members) CHECK(is_valid_route(m.path, 0, 14));
        }
    }

    SUBCASE("triangle init is binomial with p=1/2 for the direct path") {
        auto g = test::make_triangle();
        GaParams params;
        params.population_size = 20;
        Rng rng(7);
        int direct = 0, total = 0;
        for (int rep = 0; rep < 200; ++rep) {
            Population pop = init_population(g, 0, 2, params, rng);
            for (const auto& m : pop.members) {
                ++total;
                if (m.path.size() == 2) ++direct;
            }
        }
        const double freq = static_cast<double>(direct) / total;
        CHECK(freq > 0.47);
        CHECK(freq < 0.53);
    }
}

TEST_CASE("select_parents tournament") {
    auto g = test::make_triangle(1.0, 1.0, 1.0);

    SUBCASE("identical members yield n copies") {
        Population pop;
        for (int i = 0; i < 6; ++i) {
            RouteChromosome ch;
            ch.path = {0, 2};
            pop.members.push_back(ch);
        }
        Rng rng(8);
        auto pool = select_parents(pop, g, rng);
        CHECK(pool.size() == 6);
        for (const auto& p : pool) CHECK(p.path == std::vector<NodeId>{0, 2});
    }

    SUBCASE("fitter of two wins 3 of 4 equiprobable draw pairs") {
        // Members: direct (cost 1, f=1) and via node 1 (cost 2, f=0.5).
        Population pop;
        RouteChromosome strong, weak;
        strong.path = {0, 2};
        weak.path = {0, 1, 2};
        pop.members = {strong, weak};
        Rng rng(9);
        long strong_count = 0, total = 0;
        for (int rep = 0; rep < 5000; ++rep) {
            for (const auto& p : select_parents(pop, g, rng)) {
                ++total;
                if (p.path.size() == 2) ++strong_count;
            }
        }
        const double freq = static_cast<double>(strong_count) / total;
        CHECK(freq > 0.72);
        CHECK(freq < 0.78);
    }
}

TEST_CASE("crossover") {
    SUBCASE("single common internal node forces the exchange") {
        RouteChromosome a, b;
        a.path = {0, 1, 2, 3, 9};
        b.path = {0, 4, 2, 5, 9};
        Rng rng(10);
        auto [o1, o2] = crossover(a, b, rng);
        CHECK(o1.path == std::vector<NodeId>{0, 1, 2, 5, 9});
        CHECK(o2.path == std::vector<NodeId>{0, 4, 2, 3, 9});
    }

    SUBCASE("no common internal node passes parents through") {
        RouteChromosome a, b;
        a.path = {0, 1, 9};
        b.path = {0, 2, 9};
        Rng rng(11);
        auto [o1, o2] = crossover(a, b, rng);
        CHECK(o1.path == a.path);
        CHECK(o2.path == b.path);
    }

    SUBCASE("reversed parents produce loop-repaired offspring") {
        // a=[0,1,2,9], b=[0,2,1,9]: crossing at 1 gives [0,1,9] and the raw
        // [0,2,1,2,9] which loop repair reduces to [0,2,9]; crossing at 2 is
        // symmetric. Either way both offspring are loop-free.
        RouteChromosome a, b;
        a.path = {0, 1, 2, 9};
        b.path = {0, 2, 1, 9};
        const std::set<std::vector<NodeId>> allowed{
            {0, 1, 9}, {0, 2, 9}, {0, 1, 2, 9}, {0, 2, 1, 9}};
        Rng rng(12);
        for (int rep = 0; rep < 50; ++rep) {
            auto [o1, o2] = crossover(a, b, rng);
            CHECK(allowed.count(o1.path) == 1);
            CHECK(allowed.count(o2.path) == 1);
        }
    }

    SUBCASE("offspring of random parents are always loop-free") {
        Rng rng(13);
        GaParams params;
        params.population_size = 2;
        for (int trial = 0; trial < 200; ++trial) {
            auto g = test::random_graph(12, 0.35, rng);
            if (!ensure_sd_connected(g, 0, 11)) continue;
            auto a = seed_path(g, 0, 11, rng);
            auto b = seed_path(g, 0, 11, rng);
            auto [o1, o2] = crossover(a, b, rng);
            CHECK(is_valid_route(o1.path, 0, 11));
            CHECK(is_valid_route(o2.path, 0, 11));
        }
    }
}

TEST_CASE("mutate") {
    SUBCASE("line graph has a unique continuation") {
        auto g = test::make_line(3);
        RouteChromosome ch;
        ch.path = {0, 1, 2};
        Rng rng(14);
        CHECK(mutate(g, ch, rng).path == std::vector<NodeId>{0, 1, 2});
    }

    SUBCASE("triangle path through the middle keeps its suffix") {
        // Prefix {0, 1}: the only avoiding walk from 1 is the direct hop to 2.
        auto g = test::make_triangle();
        RouteChromosome ch;
        ch.path = {0, 1, 2};
        Rng rng(15);
        CHECK(mutate(g, ch, rng).path == std::vector<NodeId>{0, 1, 2});
    }

    SUBCASE("output is always a valid route") {
        Rng rng(16);
        for (int trial = 0; trial < 300; ++trial) {
            auto g = test::random_graph(12, 0.35, rng);
            if (!ensure_sd_connected(g, 0, 11)) continue;
            auto ch = seed_path(g, 0, 11, rng);
            auto out = mutate(g, ch, rng);
            CHECK(is_valid_route(out.path, 0, 11));
            CHECK(fitness(g, out) > 0.0);
        }
    }
}

TEST_CASE("evolve_one_generation") {
    SUBCASE("no operators, no hooks: best fitness never decreases") {
        Rng rng(17);
        auto g = test::random_graph(12, 0.4, rng);
        REQUIRE(ensure_sd_connected(g, 0, 11));
        GaParams params;
        params.population_size = 10;
        params.crossover_prob = 0.0;
        params.mutation_prob = 0.0;
        Population pop = init_population(g, 0, 11, params, rng);
        double last_best = evaluate(g, pop.elite);
        for (int t = 0; t < 30; ++t) {
            evolve_one_generation(pop, g, params, rng);
            const double best = pop.elite.cached_fitness;
            CHECK(best >= last_best);
            last_best = best;
            CHECK(pop.members.size() == 10);
        }
    }

    SUBCASE("line-graph instance stays at the unique path fitness") {
        auto g = test::make_line(4);
        GaParams params;
        params.population_size = 6;
        Rng rng(18);
        Population pop = init_population(g, 0, 3, params, rng);
        for (int t = 0; t < 10; ++t) {
            evolve_one_generation(pop, g, params, rng);
            CHECK(evaluate(g, pop.elite) == doctest::Approx(1.0 / 3.0));
        }
    }

    SUBCASE("static monotonicity with full operators") {
        Rng rng(19);
        for (int trial = 0; trial < 10; ++trial) {
            auto g = test::random_graph(14, 0.3, rng);
            if (!ensure_sd_connected(g, 0, 13)) continue;
            GaParams params;
            params.population_size = 12;
            Population pop = init_population(g, 0, 13, params, rng);
            double last_best = evaluate(g, pop.elite);
            for (int t = 0; t < 25; ++t) {
                evolve_one_generation(pop, g, params, rng);
                CHECK(pop.elite.cached_fitness >= last_best);
                last_best = pop.elite.cached_fitness;
            }
        }
    }
}
