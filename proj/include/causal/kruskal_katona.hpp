#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace causal {

namespace detail {

inline constexpr std::uint64_t kBinomCap = UINT64_C(1) << 62;

}  // namespace detail

/// Exact binomial coefficient, saturating at cap (default ~4.6e18). The
/// running product r = C(n-k+i, i) stays an integer at every step.
inline std::uint64_t binom(long long n, long long k, std::uint64_t cap = detail::kBinomCap) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (long long i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned long long>(n - k + i) / static_cast<unsigned long long>(i);
        if (r > cap) return cap;
    }
    return static_cast<std::uint64_t>(r);
}

/// Unique k-cascade representation T = sum of C(a_q, q) with
/// a_k > a_{k-1} > ... > a_s >= s >= 1, found greedily from q = k down.
struct CascadeForm {
    std::vector<std::pair<long long, int>> terms;  // (a_q, q), q descending
};

inline CascadeForm cascade_decompose(std::uint64_t total, int k) {
    if (total < 1 || k < 1) throw std::invalid_argument("cascade_decompose: need T >= 1, k >= 1");
    CascadeForm form;
    std::uint64_t rem = total;
    long long upper = -1;  // strict upper bound on the next a_q once set
    for (int q = k; q >= 1 && rem > 0; --q) {
        long long a = q;  // C(q,q) = 1 <= rem, so a >= q always exists
        while (binom(a + 1, q) <= rem && (upper < 0 || a + 1 < upper)) ++a;
        form.terms.emplace_back(a, q);
        rem -= binom(a, q);
        upper = a;
    }
    if (rem != 0) throw std::logic_error("cascade_decompose: greedy did not terminate");
    return form;
}

inline std::uint64_t cascade_sum(const CascadeForm& form) {
    std::uint64_t s = 0;
    for (const auto& [a, q] : form.terms) s += binom(a, q);
    return s;
}

/// Exact shadow cardinality of the first T weight-k vectors of {0,1}^m in
/// colex order: sum of C(a_q, q-1) over the k-cascade of T (the Kruskal-
/// Katona bound, met with equality by colex prefixes).
inline std::uint64_t shadow_size(std::uint64_t total, int k, int m) {
    if (k < 1 || m < k) throw std::invalid_argument("shadow_size: need 1 <= k <= m");
    if (total < 1 || total > binom(m, k))
        throw std::invalid_argument("shadow_size: T out of range");
    std::uint64_t s = 0;
    for (const auto& [a, q] : cascade_decompose(total, k).terms) s += binom(a, q - 1);
    return s;
}

/// A k-subset of {1..m} as its ascending element list. Element 1 corresponds
/// to the lowest-order bit of the row it encodes.
using Combination = std::vector<int>;

/// Advance comb to its colex successor over ground set {1..m}; false once the
/// last combination {m-k+1..m} is reached.
inline bool next_colex(Combination& comb, int m) {
    const int k = static_cast<int>(comb.size());
    for (int i = 0; i < k; ++i) {
        int limit = (i + 1 < k) ? comb[i + 1] - 1 : m;
        if (comb[i] < limit) {
            comb[i]++;
            for (int r = 0; r < i; ++r) comb[r] = r + 1;
            return true;
        }
    }
    return false;
}

/// 0-based colex rank: sum of C(s_i - 1, i) over ascending elements s_1..s_k
/// (1-based i), saturating at cap.
inline std::uint64_t colex_rank(const Combination& comb,
                                std::uint64_t cap = detail::kBinomCap) {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < comb.size(); ++i) {
        r += binom(comb[i] - 1, static_cast<long long>(i) + 1, cap);
        if (r >= cap) return cap;
    }
    return r;
}

/// First t weight-k subsets of {1..m} in colex order.
inline std::vector<Combination> colex_prefix(std::uint64_t t, int k, int m) {
    if (k < 1 || m < k) throw std::invalid_argument("colex_prefix: need 1 <= k <= m");
    if (t < 1 || t > binom(m, k)) throw std::invalid_argument("colex_prefix: t out of range");
    std::vector<Combination> out;
    out.reserve(t);
    Combination comb(k);
    for (int i = 0; i < k; ++i) comb[i] = i + 1;
    out.push_back(comb);
    while (out.size() < t && next_colex(comb, m)) out.push_back(comb);
    return out;
}

}  // namespace causal
