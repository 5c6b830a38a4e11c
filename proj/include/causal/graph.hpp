#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "causal/util.hpp"

namespace causal {

using NodeId = int;

/// Causal graph on n observable nodes plus unordered latent pairs.
///
/// Observable edges (u,v) mean u -> v. Each latent pair {u,v} stands for one
/// hidden variable l with edges l -> u and l -> v; latents have no other
/// edges and are addressed only through their pair. The structure is a plain
/// value type and is treated as immutable once built: every algorithm in
/// this library only reads it.
struct CausalGraph {
    int n = 0;
    std::vector<std::pair<NodeId, NodeId>> edges;    // sorted, unique
    std::vector<std::pair<NodeId, NodeId>> latents;  // stored as (min,max), sorted, unique

    CausalGraph() = default;
    explicit CausalGraph(int n_nodes) : n(n_nodes) {}

    void add_edge(NodeId u, NodeId v) {
        auto e = std::make_pair(u, v);
        auto it = std::lower_bound(edges.begin(), edges.end(), e);
        if (it == edges.end() || *it != e) edges.insert(it, e);
    }

    void add_latent(NodeId u, NodeId v) {
        auto p = std::minmax(u, v);
        auto e = std::make_pair(p.first, p.second);
        auto it = std::lower_bound(latents.begin(), latents.end(), e);
        if (it == latents.end() || *it != e) latents.insert(it, e);
    }

    bool has_edge(NodeId u, NodeId v) const {
        return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
    }

    bool adjacent(NodeId u, NodeId v) const { return has_edge(u, v) || has_edge(v, u); }

    bool has_latent(NodeId u, NodeId v) const {
        auto p = std::minmax(u, v);
        return std::binary_search(latents.begin(), latents.end(),
                                  std::make_pair(p.first, p.second));
    }

    bool operator==(const CausalGraph&) const = default;
};

/// Transitive closure of the observable edge relation: (u,v) iff a directed
/// path u ~> v exists.
struct AncestralGraph {
    int n = 0;
    std::vector<std::pair<NodeId, NodeId>> edges;  // sorted, unique

    bool has(NodeId u, NodeId v) const {
        return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
    }

    std::vector<NodeId> ancestors_of(NodeId v) const {
        std::vector<NodeId> out;
        for (const auto& e : edges)
            if (e.second == v) out.push_back(e.first);
        return out;
    }

    bool operator==(const AncestralGraph&) const = default;
};

namespace detail {

inline void check_node(const CausalGraph& g, NodeId v, const char* who) {
    if (v < 0 || v >= g.n)
        throw std::invalid_argument(std::string(who) + ": node id out of range");
}

// Parent/child lists over observable edges only.
struct Adjacency {
    std::vector<std::vector<NodeId>> children, parents;
};

inline Adjacency build_adjacency(const CausalGraph& g) {
    Adjacency adj;
    adj.children.resize(g.n);
    adj.parents.resize(g.n);
    for (const auto& [u, v] : g.edges) {
        adj.children[u].push_back(v);
        adj.parents[v].push_back(u);
    }
    return adj;
}

// Forward BFS (dir = children) or backward BFS (dir = parents) from v,
// excluding v itself.
inline std::vector<NodeId> reach_from(const std::vector<std::vector<NodeId>>& dir, NodeId v) {
    std::vector<char> seen(dir.size(), 0);
    std::queue<NodeId> q;
    q.push(v);
    seen[v] = 1;
    std::vector<NodeId> out;
    while (!q.empty()) {
        NodeId x = q.front();
        q.pop();
        for (NodeId y : dir[x]) {
            if (!seen[y]) {
                seen[y] = 1;
                out.push_back(y);
                q.push(y);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

/// Checks all structural invariants; returns a description of the first
/// violation, or nullopt when the graph is well formed.
inline std::optional<std::string> validate(const CausalGraph& g) {
    if (g.n < 0) return "negative node count";
    for (const auto& [u, v] : g.edges) {
        if (u < 0 || u >= g.n || v < 0 || v >= g.n) return "edge endpoint out of range";
        if (u == v) return "self-loop on node " + std::to_string(u);
    }
    for (const auto& [u, v] : g.latents) {
        if (u < 0 || u >= g.n || v < 0 || v >= g.n) return "latent endpoint out of range";
        if (u == v) return "latent self-pair on node " + std::to_string(u);
    }
    // Kahn's algorithm; leftover nodes mean a directed cycle.
    std::vector<int> indeg(g.n, 0);
    auto adj = detail::build_adjacency(g);
    for (const auto& e : g.edges) indeg[e.second]++;
    std::queue<NodeId> q;
    for (NodeId v = 0; v < g.n; ++v)
        if (indeg[v] == 0) q.push(v);
    int seen = 0;
    while (!q.empty()) {
        NodeId x = q.front();
        q.pop();
        ++seen;
        for (NodeId y : adj.children[x])
            if (--indeg[y] == 0) q.push(y);
    }
    if (seen != g.n) return "cycle among observable edges";
    return std::nullopt;
}

inline std::vector<NodeId> parents(const CausalGraph& g, NodeId v) {
    detail::check_node(g, v, "parents");
    std::vector<NodeId> out;
    for (const auto& e : g.edges)
        if (e.second == v) out.push_back(e.first);
    return out;
}

inline std::vector<NodeId> ancestors(const CausalGraph& g, NodeId v) {
    detail::check_node(g, v, "ancestors");
    return detail::reach_from(detail::build_adjacency(g).parents, v);
}

inline std::vector<NodeId> descendants(const CausalGraph& g, NodeId v) {
    detail::check_node(g, v, "descendants");
    return detail::reach_from(detail::build_adjacency(g).children, v);
}

inline AncestralGraph true_ancestral(const CausalGraph& g) {
    AncestralGraph anc;
    anc.n = g.n;
    auto adj = detail::build_adjacency(g);
    for (NodeId v = 0; v < g.n; ++v)
        for (NodeId d : detail::reach_from(adj.children, v)) anc.edges.emplace_back(v, d);
    std::sort(anc.edges.begin(), anc.edges.end());
    return anc;
}

/// Maximum undirected degree, counting observable edges and latent
/// adjacencies (each latent pair contributes one adjacency to both members).
inline int max_degree(const CausalGraph& g) {
    std::vector<int> deg(g.n, 0);
    for (const auto& [u, v] : g.edges) {
        deg[u]++;
        deg[v]++;
    }
    for (const auto& [u, v] : g.latents) {
        deg[u]++;
        deg[v]++;
    }
    int d = 0;
    for (int x : deg) d = std::max(d, x);
    return d;
}

}  // namespace causal
