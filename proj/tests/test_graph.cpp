#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "causal/graph.hpp"
#include "causal/graph_io.hpp"

using causal::CausalGraph;

namespace {

CausalGraph chain3() {
    CausalGraph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    return g;
}

}  // namespace

TEST_CASE("validate accepts a chain and reports violations") {
    CHECK_FALSE(causal::validate(chain3()).has_value());

    CausalGraph cyc(2);
    cyc.add_edge(0, 1);
    cyc.add_edge(1, 0);
    auto bad = causal::validate(cyc);
    REQUIRE(bad.has_value());
    CHECK(bad->find("cycle") != std::string::npos);

    CausalGraph selfpair(2);
    selfpair.add_latent(0, 0);
    bad = causal::validate(selfpair);
    REQUIRE(bad.has_value());
    CHECK(bad->find("self-pair") != std::string::npos);

    CausalGraph loop(2);
    loop.add_edge(1, 1);
    bad = causal::validate(loop);
    REQUIRE(bad.has_value());
    CHECK(bad->find("self-loop") != std::string::npos);

    CausalGraph range(2);
    range.add_edge(0, 5);
    CHECK(causal::validate(range).has_value());
}

TEST_CASE("parents, ancestors, descendants") {
    auto g = chain3();
    CHECK(causal::parents(g, 2) == std::vector<int>{1});
    CHECK(causal::ancestors(g, 2) == std::vector<int>{0, 1});
    CHECK(causal::descendants(g, 0) == std::vector<int>{1, 2});

    CausalGraph empty(3);
    CHECK(causal::descendants(empty, 0).empty());
    CHECK_THROWS_AS(causal::parents(g, 7), std::invalid_argument);
}

TEST_CASE("true_ancestral and max_degree") {
    auto anc = causal::true_ancestral(chain3());
    CHECK(anc.edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
    CHECK(anc.has(0, 2));
    CHECK_FALSE(anc.has(2, 0));

    CHECK(causal::true_ancestral(CausalGraph(4)).edges.empty());

    CausalGraph star(8);
    for (int v = 1; v < 8; ++v) star.add_edge(0, v);
    CHECK(causal::max_degree(star) == 7);

    CausalGraph mixed(3);
    mixed.add_edge(0, 1);
    mixed.add_latent(0, 1);
    CHECK(causal::max_degree(mixed) == 2);  // edge plus latent adjacency
}

TEST_CASE("graph file round-trip is byte stable") {
    CausalGraph g(5);
    g.add_edge(3, 1);
    g.add_edge(0, 4);
    g.add_edge(0, 2);
    g.add_latent(4, 2);
    g.add_latent(1, 0);

    std::ostringstream first;
    causal::write_graph(first, g);
    std::istringstream back(first.str());
    auto g2 = causal::read_graph(back);
    CHECK(g2 == g);

    std::ostringstream second;
    causal::write_graph(second, g2);
    CHECK(second.str() == first.str());
}

TEST_CASE("graph parser handles comments and rejects junk") {
    std::istringstream ok("# header\nn 3\nedge 0 1  # trailing comment\nlatent 2 0\n");
    auto g = causal::read_graph(ok);
    CHECK(g.n == 3);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_latent(0, 2));

    std::istringstream no_n("edge 0 1\n");
    CHECK_THROWS_AS(causal::read_graph(no_n), causal::ParseError);

    std::istringstream bad_kw("n 2\nvertex 0 1\n");
    CHECK_THROWS_AS(causal::read_graph(bad_kw), causal::ParseError);

    std::istringstream out_of_range("n 2\nedge 0 2\n");
    CHECK_THROWS_AS(causal::read_graph(out_of_range), causal::ParseError);

    std::istringstream self_edge("n 2\nedge 1 1\n");
    CHECK_THROWS_AS(causal::read_graph(self_edge), causal::ParseError);
}
