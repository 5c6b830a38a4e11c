#pragma once

#include <algorithm>
#include <array>
#include <queue>
#include <vector>

#include "causal/graph.hpp"

namespace causal {

/// Graph surgery applied before a d-separation query. Nodes in cut_incoming
/// lose all incoming edges (do-semantics), nodes in cut_outgoing lose all
/// outgoing edges (the action/observation exchange check). A node listed in
/// both loses all edges. Both sets refer to observable nodes.
struct MutilationSpec {
    std::vector<NodeId> cut_incoming;
    std::vector<NodeId> cut_outgoing;
};

namespace detail {

// Full graph with one explicit fork node per latent pair. Observables keep
// their ids [0, n); latent k becomes node n + k.
struct ExpandedGraph {
    int n_obs = 0;
    int total = 0;
    std::vector<std::vector<NodeId>> children, parents;
};

inline ExpandedGraph expand(const CausalGraph& g, const MutilationSpec& mut) {
    ExpandedGraph ex;
    ex.n_obs = g.n;
    ex.total = g.n + static_cast<int>(g.latents.size());
    ex.children.resize(ex.total);
    ex.parents.resize(ex.total);

    std::vector<char> in_cut(g.n, 0), out_cut(g.n, 0);
    for (NodeId v : mut.cut_incoming) {
        check_node(g, v, "mutilation");
        in_cut[v] = 1;
    }
    for (NodeId v : mut.cut_outgoing) {
        check_node(g, v, "mutilation");
        out_cut[v] = 1;
    }

    auto link = [&](NodeId a, NodeId b) {
        ex.children[a].push_back(b);
        ex.parents[b].push_back(a);
    };
    for (const auto& [u, v] : g.edges) {
        if (in_cut[v] || out_cut[u]) continue;
        link(u, v);
    }
    for (std::size_t k = 0; k < g.latents.size(); ++k) {
        NodeId l = g.n + static_cast<int>(k);
        if (!in_cut[g.latents[k].first]) link(l, g.latents[k].first);
        if (!in_cut[g.latents[k].second]) link(l, g.latents[k].second);
    }
    return ex;
}

// Z itself plus everything with a directed path into Z.
inline std::vector<char> ancestors_of_set(const ExpandedGraph& ex, const std::vector<char>& z) {
    std::vector<char> mark(ex.total, 0);
    std::queue<NodeId> q;
    for (NodeId v = 0; v < ex.total; ++v)
        if (z[v]) {
            mark[v] = 1;
            q.push(v);
        }
    while (!q.empty()) {
        NodeId x = q.front();
        q.pop();
        for (NodeId p : ex.parents[x])
            if (!mark[p]) {
                mark[p] = 1;
                q.push(p);
            }
    }
    return mark;
}

}  // namespace detail

/// d-separation of i and j given Z in the mutilated graph, decided by the
/// standard reachability ("ball passing") sweep over (node, entry-direction)
/// states rather than path enumeration. Latent pairs participate as hidden
/// fork nodes; they can never be conditioned on.
inline bool d_separated(const CausalGraph& g, NodeId i, NodeId j,
                        const std::vector<NodeId>& given, const MutilationSpec& mut = {}) {
    detail::check_node(g, i, "d_separated");
    detail::check_node(g, j, "d_separated");
    if (i == j) throw std::invalid_argument("d_separated: endpoints must differ");
    for (NodeId z : given) {
        detail::check_node(g, z, "d_separated conditioning set");
        if (z == i || z == j)
            throw std::invalid_argument("d_separated: conditioning set overlaps endpoints");
    }

    auto ex = detail::expand(g, mut);
    std::vector<char> in_z(ex.total, 0);
    for (NodeId z : given) in_z[z] = 1;
    auto anc_z = detail::ancestors_of_set(ex, in_z);

    // State: node x entered either from one of its children (FROM_CHILD) or
    // from one of its parents (FROM_PARENT). The source starts as if entered
    // from a virtual child, which permits both initial directions.
    enum { FROM_CHILD = 0, FROM_PARENT = 1 };
    std::vector<std::array<char, 2>> seen(ex.total, {0, 0});
    std::queue<std::pair<NodeId, int>> q;
    auto visit = [&](NodeId x, int dir) {
        if (!seen[x][dir]) {
            seen[x][dir] = 1;
            q.emplace(x, dir);
        }
    };
    visit(i, FROM_CHILD);
    while (!q.empty()) {
        auto [x, dir] = q.front();
        q.pop();
        if (x == j) return false;  // active trail found
        if (dir == FROM_CHILD) {
            if (!in_z[x]) {
                for (NodeId p : ex.parents[x]) visit(p, FROM_CHILD);
                for (NodeId c : ex.children[x]) visit(c, FROM_PARENT);
            }
        } else {
            if (!in_z[x])
                for (NodeId c : ex.children[x]) visit(c, FROM_PARENT);
            if (anc_z[x])  // collider at x is opened by Z
                for (NodeId p : ex.parents[x]) visit(p, FROM_CHILD);
        }
    }
    return true;
}

}  // namespace causal
