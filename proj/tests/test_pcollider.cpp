#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "causal/pcollider.hpp"
#include "test_support.hpp"

using causal::CausalGraph;

namespace {

// i -> k <- w -> j with k -> p -> j: k is the lone p-collider for (i, j).
// Node map: i=0, j=1, k=2, w=3, p=4.
CausalGraph figure_graph() {
    CausalGraph g(5);
    g.add_edge(0, 2);
    g.add_edge(3, 2);
    g.add_edge(3, 1);
    g.add_edge(2, 4);
    g.add_edge(4, 1);
    return g;
}

}  // namespace

TEST_CASE("p-collider on the figure graph") {
    auto g = figure_graph();
    CHECK(causal::is_pcollider(g, 0, 1, 2));
    CHECK(causal::p_colliders(g, 0, 1) == std::vector<int>{2});
    CHECK(causal::p_colliders_bruteforce(g, 0, 1) == std::vector<int>{2});
    CHECK(causal::tau(g) == 1);
}

TEST_CASE("collider without a useful descendant is not a p-collider") {
    CausalGraph g(3);
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    CHECK_FALSE(causal::is_pcollider(g, 0, 1, 2));
    CHECK(causal::p_colliders(g, 0, 1).empty());
}

TEST_CASE("empty and chain graphs have no p-colliders") {
    CausalGraph empty(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                if (i != j && j != k && i != k) CHECK_FALSE(causal::is_pcollider(empty, i, j, k));
    CHECK(causal::tau(empty) == 0);

    CausalGraph chain(3);
    chain.add_edge(0, 1);
    chain.add_edge(1, 2);
    CHECK(causal::p_colliders(chain, 0, 2).empty());
}

TEST_CASE("latents can sit inside the collider path") {
    // i <- l -> k <- w -> j with k -> p -> j: the i-side half runs through
    // the latent fork, so the flow network must traverse l.
    CausalGraph g(5);  // i=0, j=1, k=2, w=3, p=4
    g.add_latent(0, 2);
    g.add_edge(3, 2);
    g.add_edge(3, 1);
    g.add_edge(2, 4);
    g.add_edge(4, 1);
    CHECK(causal::is_pcollider(g, 0, 1, 2));
    CHECK(causal::p_colliders_bruteforce(g, 0, 1) == std::vector<int>{2});
}

TEST_CASE("distinctness is enforced") {
    auto g = figure_graph();
    CHECK_THROWS_AS(causal::is_pcollider(g, 0, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(causal::p_colliders(g, 1, 1), std::invalid_argument);
}

TEST_CASE("brute force rejects oversized graphs") {
    CausalGraph big(13);
    CHECK_THROWS_AS(causal::p_colliders_bruteforce(big, 0, 1), std::invalid_argument);
    CHECK_NOTHROW(causal::p_colliders_bruteforce(big, 0, 1, 13));
}

TEST_CASE("flow and enumeration agree on random graphs") {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 150; ++it) {
        int n_obs = 3 + static_cast<int>(rng() % 5);
        int n_lat = static_cast<int>(rng() % 3);
        auto g = test_support::random_graph(rng, n_obs, n_lat, 0.4);
        for (int i = 0; i < n_obs; ++i)
            for (int j = i + 1; j < n_obs; ++j)
                REQUIRE(causal::p_colliders(g, i, j) == causal::p_colliders_bruteforce(g, i, j));
    }
}

TEST_CASE("every p-collider is an ancestor of an endpoint, tau <= n-2") {
    std::mt19937_64 rng(37);
    for (int it = 0; it < 100; ++it) {
        int n_obs = 3 + static_cast<int>(rng() % 5);
        auto g = test_support::random_graph(rng, n_obs, static_cast<int>(rng() % 3), 0.45);
        int t = causal::tau(g);
        CHECK(t <= n_obs - 2);
        for (int i = 0; i < n_obs; ++i) {
            for (int j = i + 1; j < n_obs; ++j) {
                for (int k : causal::p_colliders(g, i, j)) {
                    auto anc_i = causal::ancestors(g, i);
                    auto anc_j = causal::ancestors(g, j);
                    bool is_anc = std::binary_search(anc_i.begin(), anc_i.end(), k) ||
                                  std::binary_search(anc_j.begin(), anc_j.end(), k);
                    CHECK(is_anc);
                }
            }
        }
    }
}

TEST_CASE("tau of the complete DAG matches the enumeration oracle") {
    for (int n = 3; n <= 6; ++n) {
        causal::CausalGraph g(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
        int expected = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                expected = std::max(
                    expected,
                    static_cast<int>(causal::p_colliders_bruteforce(g, i, j).size()));
        CHECK(causal::tau(g) == expected);
    }
}
