#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace causal {

/// Thrown when a requested construction cannot exist for the given
/// parameters (e.g. no antichain of the requested size fits the budget).
struct InfeasibleError : std::runtime_error {
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown by the recovery pipeline when a randomized intervention family
/// fails to cover some node pair. Retrying with a different seed is the
/// intended remedy.
struct FamilyCoverageError : std::runtime_error {
    explicit FamilyCoverageError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Smallest L with 2^L >= n. ceil_log2(1) == 0.
inline int ceil_log2(int n) {
    if (n < 1) throw std::invalid_argument("ceil_log2: n must be >= 1");
    int l = 0;
    std::int64_t p = 1;
    while (p < n) {
        p <<= 1;
        ++l;
    }
    return l;
}

namespace detail {

// splitmix64 finalizer; used to derive independent sub-seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

}  // namespace causal
