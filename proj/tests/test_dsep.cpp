#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "causal/dsep.hpp"
#include "test_support.hpp"

using causal::CausalGraph;
using causal::MutilationSpec;
using causal::d_separated;

TEST_CASE("chain and collider blocking") {
    CausalGraph chain(3);
    chain.add_edge(0, 1);
    chain.add_edge(1, 2);
    CHECK(d_separated(chain, 0, 2, {1}));
    CHECK_FALSE(d_separated(chain, 0, 2, {}));

    CausalGraph collider(3);
    collider.add_edge(0, 1);
    collider.add_edge(2, 1);
    CHECK(d_separated(collider, 0, 2, {}));
    CHECK_FALSE(d_separated(collider, 0, 2, {1}));
}

TEST_CASE("descendant of a collider opens the path") {
    CausalGraph g(4);
    g.add_edge(0, 1);
    g.add_edge(2, 1);
    g.add_edge(1, 3);
    CHECK(d_separated(g, 0, 2, {}));
    CHECK_FALSE(d_separated(g, 0, 2, {3}));
}

TEST_CASE("mutilation interacts with latents as in the necessity argument") {
    // Edge plus latent: cutting 0's incoming edges leaves the edge 0 -> 1.
    CausalGraph both(2);
    both.add_edge(0, 1);
    both.add_latent(0, 1);
    MutilationSpec cut0{{0}, {}};
    CHECK_FALSE(d_separated(both, 0, 1, {}, cut0));

    // Latent only: the same cut severs l -> 0.
    CausalGraph lat(2);
    lat.add_latent(0, 1);
    CHECK_FALSE(d_separated(lat, 0, 1, {}));
    CHECK(d_separated(lat, 0, 1, {}, cut0));
}

TEST_CASE("cut_outgoing removes observable edges but not latent parents") {
    CausalGraph g(2);
    g.add_edge(0, 1);
    MutilationSpec cut{{}, {0}};
    CHECK(d_separated(g, 0, 1, {}, cut));
    g.add_latent(0, 1);
    CHECK_FALSE(d_separated(g, 0, 1, {}, cut));
}

TEST_CASE("argument validation") {
    CausalGraph g(3);
    g.add_edge(0, 1);
    CHECK_THROWS_AS(d_separated(g, 0, 0, {}), std::invalid_argument);
    CHECK_THROWS_AS(d_separated(g, 0, 1, {1}), std::invalid_argument);
    CHECK_THROWS_AS(d_separated(g, 0, 5, {}), std::invalid_argument);
    CHECK_THROWS_AS(d_separated(g, 0, 1, {9}), std::invalid_argument);
}

TEST_CASE("d-separation is symmetric in the endpoints") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 300; ++it) {
        auto g = test_support::random_graph(rng, 2 + static_cast<int>(rng() % 6),
                                            static_cast<int>(rng() % 3), 0.35);
        int i = static_cast<int>(rng() % g.n);
        int j = static_cast<int>(rng() % g.n);
        if (i == j) continue;
        auto z = test_support::random_subset(rng, g.n, 0.3, {i, j});
        MutilationSpec mut{test_support::random_subset(rng, g.n, 0.2),
                           test_support::random_subset(rng, g.n, 0.1)};
        CHECK(d_separated(g, i, j, z, mut) == d_separated(g, j, i, z, mut));
    }
}

TEST_CASE("reachability agrees with the path-enumeration oracle") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 400; ++it) {
        int n_obs = 2 + static_cast<int>(rng() % 6);
        int n_lat = static_cast<int>(rng() % 3);
        auto g = test_support::random_graph(rng, n_obs, n_lat, 0.4);
        int i = static_cast<int>(rng() % n_obs);
        int j = static_cast<int>(rng() % n_obs);
        if (i == j) continue;
        auto z = test_support::random_subset(rng, n_obs, 0.3, {i, j});
        MutilationSpec mut{test_support::random_subset(rng, n_obs, 0.25),
                           test_support::random_subset(rng, n_obs, 0.15)};
        bool fast = d_separated(g, i, j, z, mut);
        bool slow = test_support::dsep_bruteforce(g, i, j, z, mut);
        REQUIRE(fast == slow);
    }
}

TEST_CASE("cutting incoming edges of a source node is a no-op") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 200; ++it) {
        auto g = test_support::random_graph(rng, 2 + static_cast<int>(rng() % 5),
                                            static_cast<int>(rng() % 2), 0.35);
        // Find a node with no incoming edges (observable or latent).
        int source = -1;
        for (int v = 0; v < g.n && source < 0; ++v) {
            bool incoming = false;
            for (const auto& e : g.edges) incoming |= (e.second == v);
            for (const auto& l : g.latents) incoming |= (l.first == v || l.second == v);
            if (!incoming) source = v;
        }
        if (source < 0) continue;
        int i = static_cast<int>(rng() % g.n);
        int j = static_cast<int>(rng() % g.n);
        if (i == j) continue;
        auto z = test_support::random_subset(rng, g.n, 0.3, {i, j});
        CHECK(d_separated(g, i, j, z) ==
              d_separated(g, i, j, z, MutilationSpec{{source}, {}}));
    }
}
