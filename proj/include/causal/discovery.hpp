#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "causal/graph.hpp"
#include "causal/oracle.hpp"
#include "causal/pcollider.hpp"
#include "causal/setsystem.hpp"
#include "causal/util.hpp"

namespace causal {

/// Randomized intervention collections used to hit p-colliders:
///   A — observable-edge recovery,  72 * tau' * ceil(log2 n) sets;
///   B — latents on edges,          72 * tau' * ceil(log2 n) sets;
///   D — latents on non-edges,      24 * tau'^2 * ceil(log2 n) sets;
/// every node joins each set independently with probability 1 - 1/tau',
/// tau' = max(tau, 2). Families are reproducible from (kind, n, tau, seed).
enum class FamilyKind { A, B, D };

struct InterventionFamily {
    FamilyKind kind = FamilyKind::A;
    int tau_prime = 2;
    std::uint64_t seed = 0;
    std::vector<std::vector<NodeId>> sets;  // each sorted ascending
};

/// constant_multiplier scales the 72/24 constants; raising it boosts the
/// success probability at the price of more interventions.
inline InterventionFamily sample_family(FamilyKind kind, int n, int tau, std::uint64_t seed,
                                        double constant_multiplier = 1.0) {
    if (n < 2) throw std::invalid_argument("sample_family: need n >= 2");
    if (tau < 0) throw std::invalid_argument("sample_family: tau must be >= 0");
    if (!(constant_multiplier > 0))
        throw std::invalid_argument("sample_family: multiplier must be positive");

    InterventionFamily fam;
    fam.kind = kind;
    fam.tau_prime = std::max(tau, 2);
    fam.seed = seed;

    const std::uint64_t tp = static_cast<std::uint64_t>(fam.tau_prime);
    const std::uint64_t logn = static_cast<std::uint64_t>(ceil_log2(n));
    std::uint64_t count = 0;
    std::uint64_t salt = 0;
    switch (kind) {
        case FamilyKind::A:
            count = static_cast<std::uint64_t>(std::llround(72.0 * constant_multiplier)) * tp * logn;
            salt = 0xA;
            break;
        case FamilyKind::B:
            count = static_cast<std::uint64_t>(std::llround(72.0 * constant_multiplier)) * tp * logn;
            salt = 0xB;
            break;
        case FamilyKind::D:
            count = static_cast<std::uint64_t>(std::llround(24.0 * constant_multiplier)) * tp * tp * logn;
            salt = 0xD;
            break;
    }

    std::mt19937_64 rng(detail::mix_seed(seed, salt));
    fam.sets.reserve(count);
    for (std::uint64_t t = 0; t < count; ++t) {
        std::vector<NodeId> s;
        for (NodeId v = 0; v < n; ++v)
            if (rng() % tp != 0) s.push_back(v);  // in with probability 1 - 1/tau'
        fam.sets.push_back(std::move(s));
    }
    return fam;
}

struct StageCounts {
    std::size_t ancestral = 0;
    std::size_t observable = 0;
    std::size_t latents_nonadjacent = 0;
    std::size_t latents_adjacent = 0;

    std::size_t total() const {
        return ancestral + observable + latents_nonadjacent + latents_adjacent;
    }
};

struct DiscoveryReport {
    CausalGraph recovered;
    OracleStats stats;
    StageCounts stage_counts;  // newly seen distinct interventions per stage
    int tau_used = 0;
    bool completed = true;       // false when the tau-doubling cap was hit
    bool success = false;        // set by harness code with ground-truth access
    std::vector<int> taus_tried; // doubling schedule, single entry for fixed tau
};

/// Ancestral recovery through a strongly separating system: i ~> j is marked
/// as soon as any intervention containing i but not j leaves the pair
/// dependent, and the marks are transitively closed. Any such dependence
/// certifies a directed path, and parent/child pairs are always caught, so
/// the closure is exactly Anc(G).
inline AncestralGraph recover_ancestral(const Oracle& oracle, const SSMatrix& u) {
    const int n = oracle.node_count();
    if (u.n != n) throw std::invalid_argument("recover_ancestral: matrix/oracle size mismatch");
    if (!is_strongly_separating(u))
        throw std::invalid_argument("recover_ancestral: matrix is not strongly separating");

    std::vector<std::vector<NodeId>> columns(u.m);
    for (int k = 0; k < u.m; ++k) columns[k] = u.column_set(k);

    std::vector<std::vector<char>> path(n, std::vector<char>(n, 0));
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = 0; j < n; ++j) {
            if (i == j) continue;
            for (int k = 0; k < u.m; ++k) {
                if (!u.rows[i][k] || u.rows[j][k]) continue;
                if (oracle.ci_test(i, j, {}, columns[k]) == CiResult::Dependent) {
                    path[i][j] = 1;
                    break;
                }
            }
        }
    }
    // transitive closure
    for (NodeId k = 0; k < n; ++k)
        for (NodeId i = 0; i < n; ++i)
            if (path[i][k])
                for (NodeId j = 0; j < n; ++j)
                    if (path[k][j]) path[i][j] = 1;

    AncestralGraph anc;
    anc.n = n;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = 0; j < n; ++j)
            if (i != j && path[i][j]) anc.edges.emplace_back(i, j);
    return anc;
}

namespace detail {

// Membership bitmap per family set, for fast "contains i but not j" scans.
inline std::vector<std::vector<char>> family_bitmaps(const InterventionFamily& fam, int n) {
    std::vector<std::vector<char>> in(fam.sets.size(), std::vector<char>(n, 0));
    for (std::size_t t = 0; t < fam.sets.size(); ++t)
        for (NodeId v : fam.sets[t]) in[t][v] = 1;
    return in;
}

inline std::vector<std::vector<NodeId>> parent_lists(
    int n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
    std::vector<std::vector<NodeId>> pa(n);
    for (const auto& [u, v] : edges) pa[v].push_back(u);
    for (auto& p : pa) std::sort(p.begin(), p.end());
    return pa;
}

inline std::vector<NodeId> sorted_union(std::vector<NodeId> a, const std::vector<NodeId>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

}  // namespace detail

/// Trims the ancestral graph down to the true edge set: an ancestral pair
/// i ~> j is kept as an edge iff the pair stays dependent given
/// Anc(j) \ {i} under every family intervention containing i but not j.
/// A single independence witnesses a non-edge (sound by construction); whp
/// some set covers {i} plus the pair's p-colliders, which certifies every
/// non-edge rejection.
inline std::vector<std::pair<NodeId, NodeId>> recover_observable(const Oracle& oracle,
                                                                 const AncestralGraph& anc,
                                                                 const InterventionFamily& fam) {
    const int n = oracle.node_count();
    auto in_set = detail::family_bitmaps(fam, n);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (const auto& [i, j] : anc.edges) {
        std::vector<NodeId> given = anc.ancestors_of(j);
        given.erase(std::remove(given.begin(), given.end(), i), given.end());
        bool always_dependent = true;
        bool covered = false;
        for (std::size_t t = 0; t < fam.sets.size(); ++t) {
            if (!in_set[t][i] || in_set[t][j]) continue;
            covered = true;
            if (oracle.ci_test(i, j, given, fam.sets[t]) == CiResult::Independent) {
                always_dependent = false;
                break;
            }
        }
        if (!covered)
            throw FamilyCoverageError(
                "recover_observable: no family set contains " + std::to_string(i) +
                " without " + std::to_string(j) + "; retry with a different seed");
        if (always_dependent) edges.emplace_back(i, j);
    }
    return edges;
}

/// Latents between non-adjacent pairs: {i,j} gets a latent iff the pair is
/// dependent given Pa(i) u Pa(j) under every family intervention avoiding
/// both. A latent fork can never be blocked, so detection is exact; a pair
/// without a latent is cleared by any set covering its p-colliders.
inline std::vector<std::pair<NodeId, NodeId>> latents_nonadjacent(
    const Oracle& oracle, const std::vector<std::pair<NodeId, NodeId>>& edges,
    const InterventionFamily& fam) {
    const int n = oracle.node_count();
    auto in_set = detail::family_bitmaps(fam, n);
    auto pa = detail::parent_lists(n, edges);
    std::vector<std::vector<char>> adjacent(n, std::vector<char>(n, 0));
    for (const auto& [u, v] : edges) adjacent[u][v] = adjacent[v][u] = 1;

    std::vector<std::pair<NodeId, NodeId>> found;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            if (adjacent[i][j]) continue;
            auto given = detail::sorted_union(pa[i], pa[j]);
            bool always_dependent = true;
            bool covered = false;
            for (std::size_t t = 0; t < fam.sets.size(); ++t) {
                if (in_set[t][i] || in_set[t][j]) continue;
                covered = true;
                if (oracle.ci_test(i, j, given, fam.sets[t]) == CiResult::Independent) {
                    always_dependent = false;
                    break;
                }
            }
            if (!covered)
                throw FamilyCoverageError(
                    "latents_nonadjacent: no family set avoids both " + std::to_string(i) +
                    " and " + std::to_string(j) + "; retry with a different seed");
            if (always_dependent) found.emplace_back(i, j);
        }
    }
    return found;
}

/// Latents on edges i -> j, where CI tests are useless because the edge
/// itself can never be blocked: run the do-see test against
/// do(Pa(i) u (B \ {i})) for every family set with i in B, j not in B, and
/// declare a latent iff every test reports different distributions.
inline std::vector<std::pair<NodeId, NodeId>> latents_adjacent(
    const Oracle& oracle, const std::vector<std::pair<NodeId, NodeId>>& edges,
    const InterventionFamily& fam) {
    const int n = oracle.node_count();
    auto in_set = detail::family_bitmaps(fam, n);
    auto pa = detail::parent_lists(n, edges);

    std::vector<std::pair<NodeId, NodeId>> found;
    for (const auto& [i, j] : edges) {
        std::vector<NodeId> given = pa[j];  // i is handled by the test itself
        given.erase(std::remove(given.begin(), given.end(), i), given.end());
        bool always_different = true;
        bool covered = false;
        for (std::size_t t = 0; t < fam.sets.size(); ++t) {
            if (!in_set[t][i] || in_set[t][j]) continue;
            covered = true;
            std::vector<NodeId> do_set = fam.sets[t];
            do_set.erase(std::remove(do_set.begin(), do_set.end(), i), do_set.end());
            do_set = detail::sorted_union(std::move(do_set), pa[i]);
            if (oracle.dt_test(j, i, given, do_set) == DtResult::Equal) {
                always_different = false;
                break;
            }
        }
        if (!covered)
            throw FamilyCoverageError(
                "latents_adjacent: no family set contains " + std::to_string(i) + " without " +
                std::to_string(j) + "; retry with a different seed");
        if (always_different) found.emplace_back(std::min(i, j), std::max(i, j));
    }
    return found;
}

/// Full identity-cost pipeline for a known tau: binary-encoding ancestral
/// recovery, edge recovery with family A, then latent detection with
/// families D (non-edges) and B (edges).
inline DiscoveryReport recover_full(const Oracle& oracle, int tau, std::uint64_t seed,
                                    double constant_multiplier = 1.0) {
    const int n = oracle.node_count();
    DiscoveryReport report;
    report.tau_used = tau;
    report.taus_tried = {tau};
    if (n < 2) {
        report.recovered = CausalGraph(n);
        report.stats = oracle.stats();
        return report;
    }

    auto seen = [&] { return oracle.stats().distinct_interventions(); };
    std::size_t mark = seen();

    auto anc = recover_ancestral(oracle, binary_encoding_matrix(n));
    report.stage_counts.ancestral = seen() - mark;
    mark = seen();

    auto fam_a = sample_family(FamilyKind::A, n, tau, seed, constant_multiplier);
    auto edges = recover_observable(oracle, anc, fam_a);
    report.stage_counts.observable = seen() - mark;
    mark = seen();

    auto fam_d = sample_family(FamilyKind::D, n, tau, seed, constant_multiplier);
    auto lat_nonadj = latents_nonadjacent(oracle, edges, fam_d);
    report.stage_counts.latents_nonadjacent = seen() - mark;
    mark = seen();

    auto fam_b = sample_family(FamilyKind::B, n, tau, seed, constant_multiplier);
    auto lat_adj = latents_adjacent(oracle, edges, fam_b);
    report.stage_counts.latents_adjacent = seen() - mark;

    CausalGraph g(n);
    for (const auto& [u, v] : edges) g.add_edge(u, v);
    for (const auto& [u, v] : lat_nonadj) g.add_latent(u, v);
    for (const auto& [u, v] : lat_adj) g.add_latent(u, v);
    report.recovered = std::move(g);
    report.stats = oracle.stats();
    return report;
}

/// tau-doubling wrapper for unknown tau: runs the pipeline for tau = 1, 2,
/// 4, ... until two consecutive doublings agree and the recovered graph
/// itself has at most tau p-colliders per pair. On success the accepted tau
/// is at most twice the true value (or 1 for collider-free graphs); hitting
/// the cap tau > n yields completed = false.
inline DiscoveryReport recover_full_unknown_tau(const Oracle& oracle, std::uint64_t seed,
                                                double constant_multiplier = 1.0) {
    const int n = oracle.node_count();
    if (n < 2) return recover_full(oracle, 1, seed, constant_multiplier);

    std::vector<int> tried;
    int tau_hat = 1;
    DiscoveryReport low = recover_full(oracle, tau_hat, detail::mix_seed(seed, tau_hat),
                                       constant_multiplier);
    tried.push_back(tau_hat);
    while (tau_hat <= n) {
        DiscoveryReport high = recover_full(oracle, 2 * tau_hat,
                                            detail::mix_seed(seed, 2 * tau_hat),
                                            constant_multiplier);
        tried.push_back(2 * tau_hat);
        if (low.recovered == high.recovered && tau(low.recovered) <= tau_hat) {
            low.stats = oracle.stats();
            low.taus_tried = tried;
            return low;
        }
        tau_hat *= 2;
        low = std::move(high);
    }
    low.completed = false;
    low.stats = oracle.stats();
    low.taus_tried = tried;
    return low;
}

/// Complete forward DAG on n nodes (every i -> j for i < j); the stress
/// instance behind the Omega(n) non-adaptive lower bound.
inline CausalGraph complete_dag(int n) {
    if (n < 3) throw std::invalid_argument("complete_dag: need n >= 3");
    CausalGraph g(n);
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

}  // namespace causal
