#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <map>
#include <set>

#include "causal/kruskal_katona.hpp"

using causal::CascadeForm;
using causal::Combination;
using causal::binom;

TEST_CASE("binomials are exact and saturate at the cap") {
    for (int n = 0; n <= 20; ++n) {
        std::uint64_t row = 1;
        for (int k = 0; k <= n; ++k) {
            CHECK(binom(n, k) == row);
            row = row * (n - k) / (k + 1);
        }
    }
    CHECK(binom(5, 7) == 0);
    CHECK(binom(100, 50, 1000) == 1000);
    CHECK(binom(330, 165, 12345) == 12345);
}

TEST_CASE("cascade decomposition examples") {
    auto f = causal::cascade_decompose(5, 2);
    REQUIRE(f.terms == std::vector<std::pair<long long, int>>{{3, 2}, {2, 1}});
    CHECK(causal::cascade_sum(f) == 5);

    for (int k = 1; k <= 6; ++k) {
        auto one = causal::cascade_decompose(1, k);
        REQUIRE(one.terms.size() == 1);
        CHECK(one.terms[0] == std::make_pair(static_cast<long long>(k), k));
    }

    auto full = causal::cascade_decompose(binom(7, 3), 3);
    REQUIRE(full.terms.size() == 1);
    CHECK(full.terms[0] == std::make_pair(7LL, 3));

    CHECK_THROWS_AS(causal::cascade_decompose(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(causal::cascade_decompose(5, 0), std::invalid_argument);
}

TEST_CASE("cascade round-trips with strictly decreasing terms") {
    for (int k = 1; k <= 5; ++k) {
        for (std::uint64_t total = 1; total <= 300; ++total) {
            auto f = causal::cascade_decompose(total, k);
            CHECK(causal::cascade_sum(f) == total);
            for (std::size_t t = 0; t < f.terms.size(); ++t) {
                CHECK(f.terms[t].first >= f.terms[t].second);
                if (t > 0) CHECK(f.terms[t].first < f.terms[t - 1].first);
            }
        }
    }
}

TEST_CASE("colex enumeration order and rank") {
    auto pre = causal::colex_prefix(3, 2, 4);
    REQUIRE(pre == std::vector<Combination>{{1, 2}, {1, 3}, {2, 3}});
    CHECK(causal::colex_prefix(1, 1, 5) == std::vector<Combination>{{1}});
    CHECK(causal::colex_prefix(6, 2, 4).size() == 6);
    CHECK_THROWS_AS(causal::colex_prefix(7, 2, 4), std::invalid_argument);

    // rank must match the enumeration position, exhaustively
    for (int m = 1; m <= 8; ++m) {
        for (int k = 1; k <= m; ++k) {
            auto all = causal::colex_prefix(binom(m, k), k, m);
            for (std::size_t r = 0; r < all.size(); ++r)
                REQUIRE(causal::colex_rank(all[r]) == r);
        }
    }
}

TEST_CASE("shadow sizes match enumerated shadows") {
    CHECK(causal::shadow_size(5, 2, 4) == 4);
    CHECK(causal::shadow_size(1, 3, 9) == 3);
    CHECK(causal::shadow_size(binom(6, 2), 2, 6) == binom(6, 1));
    CHECK_THROWS_AS(causal::shadow_size(7, 2, 4), std::invalid_argument);
    CHECK_THROWS_AS(causal::shadow_size(0, 2, 4), std::invalid_argument);

    // incremental enumeration for moderate sizes (the acceptance suite goes
    // to m = 12)
    for (int m = 2; m <= 9; ++m) {
        for (int k = 1; k <= m; ++k) {
            Combination comb(k);
            for (int i = 0; i < k; ++i) comb[i] = i + 1;
            std::set<Combination> shadow;
            std::uint64_t t = 0;
            while (true) {
                ++t;
                for (int drop = 0; drop < k; ++drop) {
                    Combination nb;
                    for (int x = 0; x < k; ++x)
                        if (x != drop) nb.push_back(comb[x]);
                    shadow.insert(nb);
                }
                REQUIRE(causal::shadow_size(t, k, m) == shadow.size());
                if (!causal::next_colex(comb, m)) break;
            }
            CHECK(t == binom(m, k));
        }
    }
}
