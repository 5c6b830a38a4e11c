#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "causal/graph.hpp"
#include "causal/kruskal_katona.hpp"
#include "causal/util.hpp"

namespace causal {

/// Per-node intervention costs for the linear cost model. Costs must be
/// strictly positive; the (1+eps) analysis additionally assumes a floor of 1,
/// which callers get by normalizing with min_cost().
struct CostVector {
    std::vector<double> values;

    CostVector() = default;
    explicit CostVector(std::vector<double> v) : values(std::move(v)) {
        for (double c : values)
            if (!(c > 0.0)) throw std::invalid_argument("CostVector: costs must be positive");
    }

    static CostVector unit(int n) { return CostVector(std::vector<double>(n, 1.0)); }

    int size() const { return static_cast<int>(values.size()); }
    double operator[](int i) const { return values[static_cast<std::size_t>(i)]; }

    double min_cost() const { return *std::min_element(values.begin(), values.end()); }
    double max_cost() const { return *std::max_element(values.begin(), values.end()); }
};

/// Binary n x m matrix encoding an intervention set system: rows are nodes,
/// columns are interventions, U(i,k) = 1 iff node i belongs to set k.
struct SSMatrix {
    int n = 0, m = 0;
    std::vector<std::vector<std::uint8_t>> rows;

    SSMatrix() = default;
    SSMatrix(int n_rows, int m_cols)
        : n(n_rows), m(m_cols), rows(n_rows, std::vector<std::uint8_t>(m_cols, 0)) {}

    int row_weight(int i) const {
        const auto& r = rows[static_cast<std::size_t>(i)];
        return static_cast<int>(std::count(r.begin(), r.end(), std::uint8_t{1}));
    }

    /// Column k as the sorted list of member nodes.
    std::vector<NodeId> column_set(int k) const {
        std::vector<NodeId> s;
        for (int i = 0; i < n; ++i)
            if (rows[i][k]) s.push_back(i);
        return s;
    }
};

/// Exact check of the pairwise two-column condition: for every i != j there
/// are columns where row i has a 1 and row j a 0, and vice versa. All-zero
/// rows are rejected even when n == 1 (every node must be intervened on at
/// least once for ancestral recovery to be sound against latents).
inline bool is_strongly_separating(const SSMatrix& u) {
    for (int i = 0; i < u.n; ++i) {
        bool nonzero = false;
        for (int k = 0; k < u.m; ++k) nonzero |= (u.rows[i][k] != 0);
        if (!nonzero) return false;
    }
    for (int i = 0; i < u.n; ++i) {
        for (int j = i + 1; j < u.n; ++j) {
            bool i_over_j = false, j_over_i = false;
            for (int k = 0; k < u.m && !(i_over_j && j_over_i); ++k) {
                if (u.rows[i][k] && !u.rows[j][k]) i_over_j = true;
                if (u.rows[j][k] && !u.rows[i][k]) j_over_i = true;
            }
            if (!(i_over_j && j_over_i)) return false;
        }
    }
    return true;
}

/// Linear-model objective: sum over nodes of cost times row weight.
inline double cost(const SSMatrix& u, const CostVector& c) {
    if (c.size() != u.n) throw std::invalid_argument("cost: dimension mismatch");
    double total = 0.0;
    for (int i = 0; i < u.n; ++i) total += c[i] * u.row_weight(i);
    return total;
}

namespace detail {

// Node order by descending cost, ties by index. Constructions assign rows of
// ascending weight along this order.
inline std::vector<int> order_by_cost_desc(const CostVector& c) {
    std::vector<int> order(c.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return c[a] > c[b]; });
    return order;
}

}  // namespace detail

/// Strongly separating matrix with m = 2*ceil(log2 n) columns built from the
/// binary encoding of the node indices 1..n: per bit position, one column
/// for nodes with the bit set and one for nodes with it clear.
inline SSMatrix binary_encoding_matrix(int n) {
    if (n < 2) throw std::invalid_argument("binary_encoding_matrix: need n >= 2");
    const int bits = ceil_log2(n);
    SSMatrix u(n, 2 * bits);
    for (int v = 0; v < n; ++v) {
        const unsigned idx = static_cast<unsigned>(v) + 1;
        for (int b = 0; b < bits; ++b) {
            if ((idx >> b) & 1u)
                u.rows[v][2 * b] = 1;
            else
                u.rows[v][2 * b + 1] = 1;
        }
    }
    return u;
}

namespace detail {

// One guess of the 2-approximation: the a1 highest-cost nodes take unit
// vectors on the first a1 columns; everyone else takes the smallest unused
// vector (colex within each weight) over the body columns
// [a1, m - log n) plus a row-weight indicator bit in the last log n columns.
// Returns nullopt when the body cannot hold the remaining nodes with weight
// at most log n.
inline std::optional<SSMatrix> two_approx_at_guess(const CostVector& c, int m, int a1) {
    const int n = c.size();
    const int logn = ceil_log2(n);
    const auto order = order_by_cost_desc(c);

    SSMatrix u(n, m);
    const int units = std::min(a1, n);
    for (int r = 0; r < units; ++r) u.rows[order[r]][r] = 1;
    if (units == n) return u;

    const int body_cols = m - logn - a1;
    if (body_cols < 1) return std::nullopt;
    const int max_weight = std::min(logn, body_cols);

    int weight = 1;
    Combination comb{1};
    for (int r = units; r < n; ++r) {
        auto& row = u.rows[order[r]];
        for (int e : comb) row[a1 + e - 1] = 1;
        row[m - logn + weight - 1] = 1;
        if (r + 1 == n) break;
        if (!next_colex(comb, body_cols)) {
            if (++weight > max_weight) return std::nullopt;
            comb.resize(weight);
            for (int i = 0; i < weight; ++i) comb[i] = i + 1;
        }
    }
    return u;
}

}  // namespace detail

/// Greedy 2-approximation for the minimum-cost strongly separating matrix
/// with m columns: tries every guess a1 in {0..ceil(2m/3)} for the number of
/// weight-1 rows in the optimum and keeps the cheapest feasible assignment.
/// The factor-2 guarantee is certified for m >= 66*ceil(log2 n); below that
/// the construction still runs and `warning` (when given) says the bound is
/// uncertified.
inline SSMatrix two_approx_matrix(const CostVector& c, int m, std::string* warning = nullptr) {
    const int n = c.size();
    if (n < 2) throw std::invalid_argument("two_approx_matrix: need n >= 2");
    if (warning) {
        warning->clear();
        if (m < 66 * ceil_log2(n))
            *warning = "m < 66*ceil(log2 n): the 2-approximation bound is not certified";
    }
    std::optional<SSMatrix> best;
    double best_cost = 0.0;
    for (int a1 = 0; a1 <= (2 * m + 2) / 3; ++a1) {
        auto u = detail::two_approx_at_guess(c, m, a1);
        if (!u) continue;
        double cu = cost(*u, c);
        if (!best || cu < best_cost) {
            best = std::move(u);
            best_cost = cu;
        }
    }
    if (!best)
        throw InfeasibleError(
            "two_approx_matrix: no guess places all nodes within the weight budget; "
            "increase m");
    return *best;
}

/// Kruskal-Katona construction behind the (1+eps) bound: pick k with
/// C(m,k-1) < n <= C(m,k), take the smallest t whose colex weight-k prefix
/// leaves room for n-t weight-(k-1) vectors outside its shadow, and hand the
/// lighter rows to the costlier nodes. With unit costs this is the exact
/// optimum (flat antichain theorem).
inline SSMatrix eps_approx_matrix(const CostVector& c, int m) {
    const int n = c.size();
    if (n < 2) throw std::invalid_argument("eps_approx_matrix: need n >= 2");

    int k = -1;
    for (int cand = 1; cand <= m; ++cand) {
        if (binom(m, cand, static_cast<std::uint64_t>(n)) >= static_cast<std::uint64_t>(n)) {
            k = cand;
            break;
        }
    }
    if (k < 0)
        throw InfeasibleError("eps_approx_matrix: no k with C(m,k-1) < n <= C(m,k); increase m");

    const std::uint64_t lower_layer = binom(m, k - 1);
    std::uint64_t t = 0;
    for (std::uint64_t cand = 1; cand <= static_cast<std::uint64_t>(n); ++cand) {
        std::uint64_t shadow = shadow_size(cand, k, m);
        if (cand + lower_layer >= shadow + static_cast<std::uint64_t>(n)) {
            t = cand;
            break;
        }
    }
    if (t == 0) throw std::logic_error("eps_approx_matrix: no feasible prefix length");

    auto heavy = colex_prefix(t, k, m);

    // Weight-(k-1) rows outside the shadow, colex-first. A candidate lies in
    // the shadow iff adding some element lands inside the chosen prefix.
    std::vector<Combination> light;
    const std::uint64_t need_light = static_cast<std::uint64_t>(n) - t;
    if (need_light > 0) {
        Combination comb(k - 1);
        for (int i = 0; i < k - 1; ++i) comb[i] = i + 1;
        while (light.size() < need_light) {
            bool shadowed = false;
            for (int e = 1; e <= m && !shadowed; ++e) {
                if (std::binary_search(comb.begin(), comb.end(), e)) continue;
                Combination sup = comb;
                sup.insert(std::upper_bound(sup.begin(), sup.end(), e), e);
                shadowed = colex_rank(sup, t + 1) < t;
            }
            if (!shadowed) light.push_back(comb);
            if (light.size() < need_light && !next_colex(comb, m))
                throw std::logic_error("eps_approx_matrix: ran out of weight k-1 vectors");
        }
    }

    const auto order = detail::order_by_cost_desc(c);
    SSMatrix u(n, m);
    for (int r = 0; r < n; ++r) {
        const Combination& comb =
            (static_cast<std::uint64_t>(r) < need_light) ? light[r] : heavy[r - need_light];
        for (int e : comb) u.rows[order[r]][e - 1] = 1;
    }
    return u;
}

/// Theorem condition under which eps_approx_matrix is certified to be within
/// (1+eps) of optimal: the max/min cost ratio must not exceed
/// eps*n / (3*C(m,t)) with t = floor(k - eps*k/3).
inline bool eps_condition_holds(const CostVector& c, int m, double eps) {
    const int n = c.size();
    int k = -1;
    for (int cand = 1; cand <= m; ++cand) {
        if (binom(m, cand, static_cast<std::uint64_t>(n)) >= static_cast<std::uint64_t>(n)) {
            k = cand;
            break;
        }
    }
    if (k < 0) return false;
    const int t = static_cast<int>(k - eps * k / 3.0);
    const double c_max = c.max_cost() / c.min_cost();
    return c_max <= eps * n / (3.0 * static_cast<double>(binom(m, t)));
}

/// Exhaustive minimum of the linear-cost objective over all families of n
/// distinct nonzero pairwise-incomparable vectors in {0,1}^m (antichains are
/// exactly the strongly separating row families). Weights go to costs in
/// canonical exchange-argument order. Hard caps: n <= 8, m <= 5.
inline std::pair<SSMatrix, double> brute_force_optimum(const CostVector& c, int m) {
    const int n = c.size();
    if (n > 8 || m > 5) throw std::invalid_argument("brute_force_optimum: caps are n <= 8, m <= 5");
    if (n < 1 || m < 1) throw std::invalid_argument("brute_force_optimum: need n >= 1, m >= 1");

    std::vector<double> sorted_costs(c.values);
    std::sort(sorted_costs.begin(), sorted_costs.end(), std::greater<>());

    const int top = (1 << m) - 1;
    std::vector<int> chosen;
    std::vector<int> best_masks;
    double best_cost = -1.0;

    auto weight_cost = [&](const std::vector<int>& masks) {
        std::vector<int> w;
        w.reserve(masks.size());
        for (int msk : masks) w.push_back(__builtin_popcount(static_cast<unsigned>(msk)));
        std::sort(w.begin(), w.end());
        double total = 0.0;
        for (int r = 0; r < n; ++r) total += sorted_costs[r] * w[r];
        return total;
    };

    auto incomparable = [](int a, int b) { return (a & b) != a && (a & b) != b; };

    auto search = [&](auto&& self, int next_mask) -> void {
        if (static_cast<int>(chosen.size()) == n) {
            double cu = weight_cost(chosen);
            if (best_cost < 0 || cu < best_cost) {
                best_cost = cu;
                best_masks = chosen;
            }
            return;
        }
        for (int msk = next_mask; msk <= top; ++msk) {
            if (top - msk + 1 < n - static_cast<int>(chosen.size())) break;
            bool ok = true;
            for (int prev : chosen)
                if (!incomparable(prev, msk)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            chosen.push_back(msk);
            self(self, msk + 1);
            chosen.pop_back();
        }
    };
    search(search, 1);

    if (best_cost < 0)
        throw InfeasibleError("brute_force_optimum: no antichain of size n exists in {0,1}^m");

    std::sort(best_masks.begin(), best_masks.end(), [](int a, int b) {
        int wa = __builtin_popcount(static_cast<unsigned>(a));
        int wb = __builtin_popcount(static_cast<unsigned>(b));
        return wa != wb ? wa < wb : a < b;
    });
    const auto order = detail::order_by_cost_desc(c);
    SSMatrix u(n, m);
    for (int r = 0; r < n; ++r)
        for (int b = 0; b < m; ++b)
            if ((best_masks[r] >> b) & 1) u.rows[order[r]][b] = 1;
    return {u, best_cost};
}

/// Matrix serialization: header "n m", then n lines of m characters in {0,1}.
inline void write_matrix(std::ostream& out, const SSMatrix& u) {
    out << u.n << " " << u.m << "\n";
    for (int i = 0; i < u.n; ++i) {
        for (int k = 0; k < u.m; ++k) out << (u.rows[i][k] ? '1' : '0');
        out << "\n";
    }
}

inline SSMatrix read_matrix(std::istream& in) {
    int n, m;
    if (!(in >> n >> m) || n < 0 || m < 0) throw ParseError("matrix: expected 'n m' header");
    SSMatrix u(n, m);
    std::string line;
    for (int i = 0; i < n; ++i) {
        if (!(in >> line) || static_cast<int>(line.size()) != m)
            throw ParseError("matrix: bad row " + std::to_string(i));
        for (int k = 0; k < m; ++k) {
            if (line[k] != '0' && line[k] != '1')
                throw ParseError("matrix: rows must be 0/1 strings");
            u.rows[i][k] = (line[k] == '1');
        }
    }
    return u;
}

/// Column view: one "set <k>: v ..." line per intervention.
inline void write_set_system(std::ostream& out, const SSMatrix& u) {
    for (int k = 0; k < u.m; ++k) {
        out << "set " << k << ":";
        for (NodeId v : u.column_set(k)) out << " " << v;
        out << "\n";
    }
}

}  // namespace causal
