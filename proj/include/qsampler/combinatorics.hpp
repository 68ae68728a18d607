#pragma once

#include "qsampler/exact.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qsampler {

/// Problem parameters for sampling disjoint k-subsets of {0..n-1}.
///
/// Subsets are indexed in colexicographic order throughout: the subset
/// {s_1 < s_2 < ... < s_k} has rank sum_i C(s_i, i). Elements are
/// 0-indexed. All counts are exact integers.
struct ProblemInstance {
    int n = 0; ///< ground-set size
    int k = 0; ///< subset size
    BigInt subset_count;        ///< N = C(n,k)
    BigInt disjoint_pair_count; ///< D = C(n,k) * C(n-k,k); zero iff 2k > n
};

/// Validates 1 <= k <= n and precomputes the exact counts.
/// @throws std::invalid_argument on malformed parameters.
ProblemInstance make_instance(int n, int k);

/// One k-subset identified by its colex rank in [0, N). The measurement
/// outcome alphabet of the protocol is pairs of these.
struct SubsetIndex {
    std::int64_t rank = 0;
};

/// C(n,k), exact; 0 when k > n.
/// @throws std::invalid_argument on negative arguments.
BigInt binomial(long long n, long long k);

/// The r-th k-subset of {0..n-1} in colex order, sorted ascending.
/// @throws std::out_of_range unless 0 <= r < C(n,k).
std::vector<int> unrank_subset(const BigInt& r, int n, int k);

/// Inverse of unrank_subset. `subset` must be strictly increasing with
/// elements in [0, n).
BigInt rank_subset(std::span<const int> subset, int n);

/// True iff the two sorted element lists share no element.
bool disjoint(std::span<const int> a, std::span<const int> b);

/// Rank-level disjointness within one instance; validates rank range.
bool disjoint(const ProblemInstance& inst, SubsetIndex a, SubsetIndex b);

/// D = C(n,k) * C(n-k,k): the number of ordered disjoint pairs.
BigInt count_disjoint_pairs(const ProblemInstance& inst);

/// Sorted complement of `subset` in {0..n-1}.
std::vector<int> subset_complement(std::span<const int> subset, int n);

} // namespace qsampler
