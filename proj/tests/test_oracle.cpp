#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "causal/oracle.hpp"
#include "causal/pcollider.hpp"
#include "test_support.hpp"

using causal::CausalGraph;
using causal::CiResult;
using causal::DtResult;
using causal::Oracle;

TEST_CASE("ci_test basics") {
    CausalGraph collider(3);
    collider.add_edge(0, 1);
    collider.add_edge(2, 1);
    Oracle o1(collider);
    CHECK(o1.ci_test(0, 2, {}, {}) == CiResult::Independent);
    CHECK(o1.ci_test(0, 2, {1}, {}) == CiResult::Dependent);

    CausalGraph edge(2);
    edge.add_edge(0, 1);
    Oracle o2(edge);
    CHECK(o2.ci_test(0, 1, {}, {0}) == CiResult::Dependent);

    CausalGraph latent(2);
    latent.add_latent(0, 1);
    Oracle o3(latent);
    CHECK(o3.ci_test(0, 1, {}, {0}) == CiResult::Independent);
    CHECK(o3.ci_test(0, 1, {}, {}) == CiResult::Dependent);
}

TEST_CASE("intervened bystanders act as conditioned constants") {
    // 0 -> 1 -> 2: intervening on the middle node blocks the chain even
    // though nothing is conditioned explicitly.
    CausalGraph chain(3);
    chain.add_edge(0, 1);
    chain.add_edge(1, 2);
    Oracle o(chain);
    CHECK(o.ci_test(0, 2, {}, {1}) == CiResult::Independent);
    CHECK(o.ci_test(0, 2, {}, {0}) == CiResult::Dependent);
}

TEST_CASE("dt_test do-see semantics on two nodes") {
    CausalGraph with_latent(2);
    with_latent.add_edge(0, 1);
    with_latent.add_latent(0, 1);
    CHECK(Oracle(with_latent).dt_test(1, 0, {}, {}) == DtResult::Different);

    CausalGraph plain(2);
    plain.add_edge(0, 1);
    CHECK(Oracle(plain).dt_test(1, 0, {}, {}) == DtResult::Equal);
}

TEST_CASE("oracle rejects malformed queries and graphs") {
    CausalGraph cyc(2);
    cyc.add_edge(0, 1);
    cyc.add_edge(1, 0);
    CHECK_THROWS_AS(Oracle(cyc), std::invalid_argument);

    CausalGraph g(3);
    g.add_edge(0, 1);
    Oracle o(g);
    CHECK_THROWS_AS(o.ci_test(0, 0, {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(o.ci_test(0, 1, {1}, {}), std::invalid_argument);
    CHECK_THROWS_AS(o.dt_test(1, 0, {}, {0}), std::invalid_argument);
    CHECK_THROWS_AS(o.dt_test(1, 0, {0}, {}), std::invalid_argument);
}

TEST_CASE("ci_test is symmetric in the tested pair") {
    std::mt19937_64 rng(41);
    for (int it = 0; it < 200; ++it) {
        auto g = test_support::random_graph(rng, 2 + static_cast<int>(rng() % 6),
                                            static_cast<int>(rng() % 3), 0.35);
        Oracle o(g);
        int i = static_cast<int>(rng() % g.n);
        int j = static_cast<int>(rng() % g.n);
        if (i == j) continue;
        auto z = test_support::random_subset(rng, g.n, 0.25, {i, j});
        auto s = test_support::random_subset(rng, g.n, 0.3);
        CHECK(o.ci_test(i, j, z, s) == o.ci_test(j, i, z, s));
    }
}

TEST_CASE("on latent-free graphs do(i) dependence marks exactly the ancestors") {
    std::mt19937_64 rng(43);
    for (int it = 0; it < 60; ++it) {
        auto g = test_support::random_graph(rng, 3 + static_cast<int>(rng() % 8), 0, 0.3);
        Oracle o(g);
        auto anc = causal::true_ancestral(g);
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j) {
                if (i == j) continue;
                bool dep = o.ci_test(i, j, {}, {i}) == CiResult::Dependent;
                CHECK(dep == anc.has(i, j));
            }
    }
}

TEST_CASE("covering the p-colliders makes the do-see test detect exactly the edge latents") {
    std::mt19937_64 rng(47);
    int edges_checked = 0;
    for (int it = 0; it < 80; ++it) {
        auto g = test_support::random_graph(rng, 3 + static_cast<int>(rng() % 6),
                                            static_cast<int>(rng() % 4), 0.35);
        Oracle o(g);
        for (const auto& [i, j] : g.edges) {
            // do(Pa(i) u P_ij); neither i nor j can appear in either part.
            auto do_set = causal::p_colliders(g, i, j);
            for (int p : causal::parents(g, i)) do_set.push_back(p);
            std::sort(do_set.begin(), do_set.end());
            do_set.erase(std::unique(do_set.begin(), do_set.end()), do_set.end());
            std::vector<int> given = causal::parents(g, j);
            given.erase(std::remove(given.begin(), given.end(), i), given.end());
            bool different = o.dt_test(j, i, given, do_set) == DtResult::Different;
            CHECK(different == g.has_latent(i, j));
            ++edges_checked;
        }
    }
    CHECK(edges_checked > 100);
}

TEST_CASE("stats count queries and distinct nonempty do-sets") {
    CausalGraph g(3);
    g.add_edge(0, 1);
    Oracle o(g);
    o.ci_test(0, 1, {}, {});
    o.ci_test(0, 2, {}, {});
    CHECK(o.stats().ci_queries == 2);
    CHECK(o.stats().distinct_interventions() == 0);  // observational queries are free

    o.ci_test(0, 1, {}, {0});
    o.ci_test(1, 0, {}, {0});
    CHECK(o.stats().distinct_interventions() == 1);

    o.dt_test(1, 0, {}, {2});
    auto stats = o.stats();
    CHECK(stats.dt_queries == 1);
    CHECK(stats.distinct_interventions() == 3);  // {0}, {2}, {0,2}

    CHECK(stats.total_linear_cost({1.0, 10.0, 100.0}) == 1.0 + 100.0 + 101.0);
}
