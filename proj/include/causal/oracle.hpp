#pragma once

#include <cstdint>
#include <mutex>
#include <set>
#include <vector>

#include "causal/dsep.hpp"
#include "causal/graph.hpp"

namespace causal {

enum class CiResult { Independent, Dependent };
enum class DtResult { Equal, Different };

/// Query accounting. Interventions are the distinct nonempty do-sets seen so
/// far (do of the empty set is the observational distribution and carries no
/// intervention cost); CI/DT queries themselves are free under the identity
/// cost model.
struct OracleStats {
    std::uint64_t ci_queries = 0;
    std::uint64_t dt_queries = 0;
    std::set<std::vector<NodeId>> interventions;  // canonical sorted target lists

    std::size_t distinct_interventions() const { return interventions.size(); }

    double total_linear_cost(const std::vector<double>& node_costs) const {
        double total = 0.0;
        for (const auto& s : interventions)
            for (NodeId v : s) total += node_costs.at(static_cast<std::size_t>(v));
        return total;
    }
};

/// Graphical simulation of the conditional-independence and distribution-test
/// oracles over a hidden ground-truth graph. Recovery code must interact with
/// the ground truth only through ci_test/dt_test; graph() exists for harness
/// code that scores the recovered result.
///
/// Queries are read-only on the graph; the stats accumulator is guarded by a
/// mutex, so concurrent queries on a shared Oracle are safe.
class Oracle {
   public:
    explicit Oracle(CausalGraph g) : g_(std::move(g)) {
        if (auto bad = validate(g_)) throw std::invalid_argument("Oracle: " + *bad);
    }

    int node_count() const { return g_.n; }
    const CausalGraph& graph() const { return g_; }

    /// Is v_i independent of v_j given Z under do(S)? Intervened nodes other
    /// than the tested pair act as fixed constants and are conditioned on; a
    /// tested node inside S keeps only its outgoing edges (it is randomized,
    /// not held fixed).
    CiResult ci_test(NodeId i, NodeId j, const std::vector<NodeId>& given,
                     const std::vector<NodeId>& do_set) const {
        detail::check_node(g_, i, "ci_test");
        detail::check_node(g_, j, "ci_test");
        if (i == j) throw std::invalid_argument("ci_test: endpoints must differ");
        for (NodeId z : given)
            if (z == i || z == j)
                throw std::invalid_argument("ci_test: conditioning set overlaps endpoints");

        std::vector<NodeId> z_eff = given;
        for (NodeId s : do_set)
            if (s != i && s != j) z_eff.push_back(s);
        dedupe(z_eff);

        MutilationSpec mut;
        mut.cut_incoming = do_set;
        bool sep = d_separated(g_, i, j, z_eff, mut);
        record_ci(do_set);
        return sep ? CiResult::Independent : CiResult::Dependent;
    }

    /// do-see test: are Pr[v_j | v_i, Z, do(S)] and Pr[v_j | Z, do(S+{v_i})]
    /// the same distribution? Decided by the do-calculus action/observation
    /// exchange criterion: equal iff i and j are d-separated given Z and S in
    /// the graph with S's incoming and i's outgoing edges removed.
    DtResult dt_test(NodeId outcome_j, NodeId tested_i, const std::vector<NodeId>& given,
                     const std::vector<NodeId>& do_set) const {
        detail::check_node(g_, outcome_j, "dt_test");
        detail::check_node(g_, tested_i, "dt_test");
        if (tested_i == outcome_j) throw std::invalid_argument("dt_test: endpoints must differ");
        for (NodeId s : do_set) {
            if (s == tested_i) throw std::invalid_argument("dt_test: tested node inside do-set");
            if (s == outcome_j) throw std::invalid_argument("dt_test: outcome node inside do-set");
        }
        for (NodeId z : given)
            if (z == tested_i || z == outcome_j)
                throw std::invalid_argument("dt_test: conditioning set overlaps endpoints");

        std::vector<NodeId> z_eff = given;
        z_eff.insert(z_eff.end(), do_set.begin(), do_set.end());
        dedupe(z_eff);

        MutilationSpec mut;
        mut.cut_incoming = do_set;
        mut.cut_outgoing = {tested_i};
        bool sep = d_separated(g_, tested_i, outcome_j, z_eff, mut);
        record_dt(do_set, tested_i);
        return sep ? DtResult::Equal : DtResult::Different;
    }

    OracleStats stats() const {
        std::lock_guard lock(mutex_);
        return stats_;
    }

   private:
    static void dedupe(std::vector<NodeId>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }

    void record_ci(std::vector<NodeId> do_set) const {
        dedupe(do_set);
        std::lock_guard lock(mutex_);
        stats_.ci_queries++;
        if (!do_set.empty()) stats_.interventions.insert(std::move(do_set));
    }

    void record_dt(std::vector<NodeId> do_set, NodeId tested_i) const {
        dedupe(do_set);
        std::vector<NodeId> with_i = do_set;
        with_i.push_back(tested_i);
        dedupe(with_i);
        std::lock_guard lock(mutex_);
        stats_.dt_queries++;
        if (!do_set.empty()) stats_.interventions.insert(std::move(do_set));
        stats_.interventions.insert(std::move(with_i));
    }

    CausalGraph g_;
    mutable std::mutex mutex_;
    mutable OracleStats stats_;
};

}  // namespace causal
