#pragma once

#include <algorithm>
#include <queue>
#include <vector>

#include "causal/dsep.hpp"
#include "causal/graph.hpp"

namespace causal {

namespace detail {

// Unit-capacity max flow on an explicit arc list. Flow values needed here
// never exceed 2, so plain BFS augmentation is enough.
struct FlowNet {
    struct Arc {
        int to, rev;
        int cap;
    };
    std::vector<std::vector<Arc>> arcs;

    explicit FlowNet(int nodes) : arcs(nodes) {}

    void add_arc(int a, int b) {
        arcs[a].push_back({b, static_cast<int>(arcs[b].size()), 1});
        arcs[b].push_back({a, static_cast<int>(arcs[a].size()) - 1, 0});
    }

    int max_flow(int s, int t, int need) {
        int flow = 0;
        while (flow < need) {
            std::vector<std::pair<int, int>> pred(arcs.size(), {-1, -1});
            std::queue<int> q;
            q.push(s);
            pred[s] = {s, 0};
            while (!q.empty() && pred[t].first < 0) {
                int x = q.front();
                q.pop();
                for (std::size_t a = 0; a < arcs[x].size(); ++a) {
                    const Arc& e = arcs[x][a];
                    if (e.cap > 0 && pred[e.to].first < 0) {
                        pred[e.to] = {x, static_cast<int>(a)};
                        q.push(e.to);
                    }
                }
            }
            if (pred[t].first < 0) break;
            for (int x = t; x != s;) {
                auto [px, pa] = pred[x];
                arcs[px][pa].cap -= 1;
                arcs[arcs[px][pa].to][arcs[px][pa].rev].cap += 1;
                x = px;
            }
            ++flow;
        }
        return flow;
    }
};

// Per-graph state reused across p-collider queries: the expanded graph,
// observable parent sets, and descendant closures (observable edges).
struct PcolliderContext {
    ExpandedGraph ex;
    std::vector<std::vector<NodeId>> pa;
    std::vector<std::vector<char>> desc;  // desc[v][w]: v ~> w or v == w

    explicit PcolliderContext(const CausalGraph& g) : ex(expand(g, {})) {
        auto adj = build_adjacency(g);
        pa = std::move(adj.parents);
        desc.assign(g.n, std::vector<char>(g.n, 0));
        for (NodeId v = 0; v < g.n; ++v) {
            desc[v][v] = 1;
            for (NodeId w : reach_from(adj.children, v)) desc[v][w] = 1;
        }
    }

    bool has_parent_descendant(NodeId k, NodeId i, NodeId j) const {
        for (NodeId p : pa[i])
            if (desc[k][p]) return true;
        for (NodeId p : pa[j])
            if (desc[k][p]) return true;
        return false;
    }

    // Two vertex-disjoint undirected paths from i and j that both end with
    // an edge into k, via Menger's theorem on a node-split traversal net:
    // every edge except those entering k is walkable in both directions,
    // k's outgoing edges are dropped, every node other than k is split into
    // an in-half and out-half joined by a capacity-1 arc.
    bool collider_path_exists(NodeId i, NodeId j, NodeId k) const {
        const int sink = 2 * ex.total;        // k collapses to a single node
        const int src = 2 * ex.total + 1;
        FlowNet net(2 * ex.total + 2);
        auto in_half = [](NodeId v) { return 2 * v; };
        auto out_half = [](NodeId v) { return 2 * v + 1; };
        for (NodeId v = 0; v < ex.total; ++v) {
            if (v == k) continue;
            net.add_arc(in_half(v), out_half(v));
        }
        for (NodeId a = 0; a < ex.total; ++a) {
            for (NodeId b : ex.children[a]) {
                if (a == k) continue;  // outgoing edges of k deleted
                if (b == k) {
                    net.add_arc(out_half(a), sink);  // only these arcs are one-way
                } else {
                    net.add_arc(out_half(a), in_half(b));
                    net.add_arc(out_half(b), in_half(a));
                }
            }
        }
        net.add_arc(src, in_half(i));
        net.add_arc(src, in_half(j));
        return net.max_flow(src, sink, 2) >= 2;
    }

    bool is_pcollider(NodeId i, NodeId j, NodeId k) const {
        if (!has_parent_descendant(k, i, j)) return false;
        return collider_path_exists(i, j, k);
    }
};

inline void check_triple(const CausalGraph& g, NodeId i, NodeId j, NodeId k) {
    check_node(g, i, "p-collider");
    check_node(g, j, "p-collider");
    check_node(g, k, "p-collider");
    if (i == j || i == k || j == k)
        throw std::invalid_argument("p-collider: nodes must be distinct");
}

// All simple undirected paths between i and j in the expanded graph, each
// reported as the node sequence. Used by the enumeration fallback.
inline void enumerate_paths(const ExpandedGraph& ex, NodeId i, NodeId j,
                            std::vector<NodeId>& path, std::vector<char>& used,
                            const std::vector<std::vector<NodeId>>& und,
                            std::vector<std::vector<NodeId>>& out) {
    NodeId x = path.back();
    if (x == j) {
        out.push_back(path);
        return;
    }
    for (NodeId y : und[x]) {
        if (used[y]) continue;
        used[y] = 1;
        path.push_back(y);
        enumerate_paths(ex, i, j, path, used, und, out);
        path.pop_back();
        used[y] = 0;
    }
}

}  // namespace detail

/// Whether k is a p-collider for the pair (i,j): some undirected path
/// i ... -> k <- ... j exists in the full graph (latents may appear as
/// interior nodes), and k is, or has a descendant that is, a parent of i or
/// j. The path condition is decided by a max-flow of value 2.
inline bool is_pcollider(const CausalGraph& g, NodeId i, NodeId j, NodeId k) {
    detail::check_triple(g, i, j, k);
    return detail::PcolliderContext(g).is_pcollider(i, j, k);
}

/// P_ij: every observable k that is a p-collider for (i,j).
inline std::vector<NodeId> p_colliders(const CausalGraph& g, NodeId i, NodeId j) {
    detail::check_node(g, i, "p_colliders");
    detail::check_node(g, j, "p_colliders");
    if (i == j) throw std::invalid_argument("p_colliders: endpoints must differ");
    detail::PcolliderContext ctx(g);
    std::vector<NodeId> out;
    for (NodeId k = 0; k < g.n; ++k)
        if (k != i && k != j && ctx.is_pcollider(i, j, k)) out.push_back(k);
    return out;
}

/// Enumeration oracle for p_colliders: walks every simple undirected path
/// between i and j and applies the definition directly. Only usable on small
/// graphs; max_total_nodes caps observables + latents.
inline std::vector<NodeId> p_colliders_bruteforce(const CausalGraph& g, NodeId i, NodeId j,
                                                  int max_total_nodes = 12) {
    detail::check_node(g, i, "p_colliders_bruteforce");
    detail::check_node(g, j, "p_colliders_bruteforce");
    if (i == j) throw std::invalid_argument("p_colliders_bruteforce: endpoints must differ");
    auto ex = detail::expand(g, {});
    if (ex.total > max_total_nodes)
        throw std::invalid_argument("p_colliders_bruteforce: graph exceeds node cap");

    std::vector<std::vector<NodeId>> und(ex.total);
    std::vector<std::vector<char>> edge_to(ex.total, std::vector<char>(ex.total, 0));
    for (NodeId a = 0; a < ex.total; ++a)
        for (NodeId b : ex.children[a]) {
            und[a].push_back(b);
            und[b].push_back(a);
            edge_to[a][b] = 1;  // a -> b
        }

    std::vector<std::vector<NodeId>> paths;
    std::vector<NodeId> path{i};
    std::vector<char> used(ex.total, 0);
    used[i] = 1;
    detail::enumerate_paths(ex, i, j, path, used, und, paths);

    detail::PcolliderContext ctx(g);
    std::vector<char> hit(g.n, 0);
    for (const auto& p : paths) {
        for (std::size_t t = 1; t + 1 < p.size(); ++t) {
            NodeId k = p[t];
            if (k >= g.n) continue;  // latents are never p-colliders
            bool collider = edge_to[p[t - 1]][k] && edge_to[p[t + 1]][k];
            if (collider && ctx.has_parent_descendant(k, i, j)) hit[k] = 1;
        }
    }
    std::vector<NodeId> out;
    for (NodeId k = 0; k < g.n; ++k)
        if (hit[k]) out.push_back(k);
    return out;
}

/// Smallest tau for which g is a tau-causal graph: the maximum number of
/// p-colliders over all node pairs.
inline int tau(const CausalGraph& g) {
    if (g.n < 2) return 0;
    detail::PcolliderContext ctx(g);
    int best = 0;
    for (NodeId i = 0; i < g.n; ++i) {
        for (NodeId j = i + 1; j < g.n; ++j) {
            int count = 0;
            for (NodeId k = 0; k < g.n; ++k)
                if (k != i && k != j && ctx.is_pcollider(i, j, k)) ++count;
            best = std::max(best, count);
        }
    }
    return best;
}

}  // namespace causal
