#pragma once

// Test-side oracles: independent constructions the library is judged
// against. Nothing here calls the ranking, spectra, or sampling paths under
// test.

#include "qsampler/exact.hpp"

#include <algorithm>
#include <vector>

namespace oracles {

using qsampler::BigInt;

/// Pascal's triangle, exact, rows 0..max_n.
inline std::vector<std::vector<BigInt>> pascal_triangle(int max_n) {
    std::vector<std::vector<BigInt>> rows(static_cast<std::size_t>(max_n) + 1);
    for (int n = 0; n <= max_n; ++n) {
        auto& row = rows[static_cast<std::size_t>(n)];
        row.assign(static_cast<std::size_t>(n) + 1, BigInt(1));
        for (int k = 1; k < n; ++k) {
            row[static_cast<std::size_t>(k)] =
                rows[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k - 1)] +
                rows[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k)];
        }
    }
    return rows;
}

/// All k-subsets of {0..n-1}, enumerated recursively and sorted
/// colexicographically (largest element first, ties broken inward).
inline std::vector<std::vector<int>> colex_subsets(int n, int k) {
    std::vector<std::vector<int>> all;
    std::vector<int> current;
    const auto recurse = [&](auto&& self, int next) -> void {
        if (static_cast<int>(current.size()) == k) {
            all.push_back(current);
            return;
        }
        for (int e = next; e < n; ++e) {
            current.push_back(e);
            self(self, e + 1);
            current.pop_back();
        }
    };
    recurse(recurse, 0);
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        for (std::size_t i = a.size(); i-- > 0;) {
            if (a[i] != b[i]) return a[i] < b[i];
        }
        return false;
    });
    return all;
}

/// Membership-based disjointness, quadratic on purpose.
inline bool sets_disjoint(const std::vector<int>& a, const std::vector<int>& b) {
    for (int x : a) {
        for (int y : b) {
            if (x == y) return false;
        }
    }
    return true;
}

/// Ordered disjoint pairs counted over the full cross product.
inline BigInt brute_force_disjoint_pairs(int n, int k) {
    const auto subsets = colex_subsets(n, k);
    BigInt count = 0;
    for (const auto& s : subsets) {
        for (const auto& t : subsets) {
            if (sets_disjoint(s, t)) ++count;
        }
    }
    return count;
}

} // namespace oracles
