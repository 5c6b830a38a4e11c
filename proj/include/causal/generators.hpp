#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "causal/graph.hpp"
#include "causal/util.hpp"

namespace causal {

enum class GraphModel { Er, Bipartite, PowerlawTree };

inline std::string model_name(GraphModel m) {
    switch (m) {
        case GraphModel::Er: return "er";
        case GraphModel::Bipartite: return "bipartite";
        case GraphModel::PowerlawTree: return "powerlaw_tree";
    }
    return "?";
}

inline GraphModel parse_model(const std::string& s) {
    if (s == "er") return GraphModel::Er;
    if (s == "bipartite") return GraphModel::Bipartite;
    if (s == "powerlaw_tree" || s == "powerlaw-tree") return GraphModel::PowerlawTree;
    throw std::invalid_argument("unknown graph model: " + s);
}

struct GeneratorSpec {
    GraphModel model = GraphModel::Er;
    int n = 0;
    int n1 = -1, n2 = -1;  // bipartite partition sizes, must sum to n
    double c = 1.0;        // edge density constant, edge probability c/n
    double gamma = 3.0;    // power-law exponent
    std::uint64_t seed = 0;
};

namespace detail {

// Uniform draw from [0, bound) off the raw mt19937_64 stream. The modulo
// bias is far below anything these generators can resolve.
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
    return rng() % bound;
}

inline double draw_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Seeded random DAGs.
///   er            — each pair i < j gets edge i -> j with probability c/n;
///                   index orientation keeps the graph acyclic.
///   bipartite     — edges only from the first n1 nodes to the last n2,
///                   each with probability c/n.
///   powerlaw_tree — target degrees sampled from P(deg = k) ~ k^-gamma on
///                   [1, n-1]; nodes are attached in random order to a
///                   uniformly chosen tree node with remaining degree
///                   budget (any tree node once budgets run out), edges
///                   directed away from the root 0.
inline CausalGraph generate(const GeneratorSpec& spec) {
    if (spec.n < 2) throw std::invalid_argument("generate: need n >= 2");
    if (!(spec.c >= 0)) throw std::invalid_argument("generate: c must be >= 0");
    std::mt19937_64 rng(spec.seed);
    CausalGraph g(spec.n);
    const double p = std::min(1.0, spec.c / spec.n);

    switch (spec.model) {
        case GraphModel::Er: {
            for (NodeId i = 0; i < spec.n; ++i)
                for (NodeId j = i + 1; j < spec.n; ++j)
                    if (detail::draw_unit(rng) < p) g.add_edge(i, j);
            break;
        }
        case GraphModel::Bipartite: {
            if (spec.n1 < 1 || spec.n2 < 1 || spec.n1 + spec.n2 != spec.n)
                throw std::invalid_argument("generate: bipartite needs n1 + n2 == n");
            for (NodeId u = 0; u < spec.n1; ++u)
                for (NodeId v = spec.n1; v < spec.n; ++v)
                    if (detail::draw_unit(rng) < p) g.add_edge(u, v);
            break;
        }
        case GraphModel::PowerlawTree: {
            if (!(spec.gamma > 1)) throw std::invalid_argument("generate: gamma must be > 1");
            // Inverse-CDF sampling of the truncated power law.
            std::vector<double> cdf(spec.n - 1);
            double mass = 0;
            for (int k = 1; k <= spec.n - 1; ++k) {
                mass += std::pow(static_cast<double>(k), -spec.gamma);
                cdf[k - 1] = mass;
            }
            auto sample_degree = [&] {
                double x = detail::draw_unit(rng) * mass;
                return static_cast<int>(
                           std::lower_bound(cdf.begin(), cdf.end(), x) - cdf.begin()) + 1;
            };
            std::vector<int> budget(spec.n);
            for (int v = 0; v < spec.n; ++v) budget[v] = sample_degree();

            std::vector<NodeId> arrival(spec.n - 1);
            for (int i = 0; i < spec.n - 1; ++i) arrival[i] = i + 1;
            for (int i = spec.n - 2; i > 0; --i)
                std::swap(arrival[i], arrival[detail::draw(rng, i + 1)]);

            std::vector<NodeId> in_tree{0};
            for (NodeId v : arrival) {
                std::vector<NodeId> open;
                for (NodeId w : in_tree)
                    if (budget[w] > 0) open.push_back(w);
                // Tree shape wins over budgets when they are exhausted.
                NodeId parent = open.empty()
                                    ? in_tree[detail::draw(rng, in_tree.size())]
                                    : open[detail::draw(rng, open.size())];
                g.add_edge(parent, v);
                budget[parent]--;
                budget[v]--;
                in_tree.push_back(v);
            }
            break;
        }
    }
    return g;
}

/// Adds floor(fraction * C(n,2)) latent pairs, drawn uniformly without
/// replacement from the pairs not already carrying a latent. Pairs may
/// coincide with observable edges.
inline CausalGraph inject_latents(CausalGraph g, double fraction, std::uint64_t seed) {
    if (fraction < 0 || fraction > 1)
        throw std::invalid_argument("inject_latents: fraction must be in [0,1]");
    const std::int64_t total_pairs =
        static_cast<std::int64_t>(g.n) * (g.n - 1) / 2;
    const std::int64_t want = static_cast<std::int64_t>(fraction * total_pairs);
    if (want == 0) return g;

    std::vector<std::pair<NodeId, NodeId>> pool;
    for (NodeId i = 0; i < g.n; ++i)
        for (NodeId j = i + 1; j < g.n; ++j)
            if (!g.has_latent(i, j)) pool.emplace_back(i, j);
    if (want > static_cast<std::int64_t>(pool.size()))
        throw std::invalid_argument("inject_latents: not enough free pairs");

    std::mt19937_64 rng(seed);
    for (std::int64_t k = 0; k < want; ++k) {
        std::size_t pick = k + detail::draw(rng, pool.size() - k);
        std::swap(pool[k], pool[pick]);
        g.add_latent(pool[k].first, pool[k].second);
    }
    return g;
}

}  // namespace causal
