#include "qsampler/combinatorics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qsampler {

ProblemInstance make_instance(int n, int k) {
    if (n < 1 || k < 1 || k > n) {
        throw std::invalid_argument("make_instance: need 1 <= k <= n, got n=" +
                                    std::to_string(n) + " k=" + std::to_string(k));
    }
    ProblemInstance inst;
    inst.n = n;
    inst.k = k;
    inst.subset_count = binomial(n, k);
    inst.disjoint_pair_count = inst.subset_count * binomial(n - k, k);
    return inst;
}

BigInt binomial(long long n, long long k) {
    if (n < 0 || k < 0) throw std::invalid_argument("binomial: negative argument");
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt result = 1;
    // r*(n-i) is always divisible by (i+1) at this point, so the loop is exact.
    for (long long i = 0; i < k; ++i) {
        result *= (n - i);
        result /= (i + 1);
    }
    return result;
}

std::vector<int> unrank_subset(const BigInt& r, int n, int k) {
    if (n < 0 || k < 0 || k > n) throw std::invalid_argument("unrank_subset: bad (n,k)");
    if (r < 0 || r >= binomial(n, k)) {
        throw std::out_of_range("unrank_subset: rank " + r.str() + " outside [0, C(" +
                                std::to_string(n) + "," + std::to_string(k) + "))");
    }
    std::vector<int> out(static_cast<std::size_t>(k));
    BigInt rem = r;
    int hi = n - 1;
    for (int i = k; i >= 1; --i) {
        int s = hi;
        while (binomial(s, i) > rem) --s;
        out[static_cast<std::size_t>(i - 1)] = s;
        rem -= binomial(s, i);
        hi = s - 1;
    }
    return out;
}

BigInt rank_subset(std::span<const int> subset, int n) {
    BigInt r = 0;
    int prev = -1;
    for (std::size_t i = 0; i < subset.size(); ++i) {
        const int s = subset[i];
        if (s <= prev || s >= n) {
            throw std::invalid_argument("rank_subset: elements must be strictly increasing in [0,n)");
        }
        r += binomial(s, static_cast<long long>(i) + 1);
        prev = s;
    }
    return r;
}

bool disjoint(std::span<const int> a, std::span<const int> b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return false;
        if (a[i] < b[j]) ++i; else ++j;
    }
    return true;
}

bool disjoint(const ProblemInstance& inst, SubsetIndex a, SubsetIndex b) {
    if (a.rank < 0 || b.rank < 0 || inst.subset_count <= a.rank || inst.subset_count <= b.rank) {
        throw std::out_of_range("disjoint: rank outside the instance's index space");
    }
    const auto sa = unrank_subset(a.rank, inst.n, inst.k);
    const auto sb = unrank_subset(b.rank, inst.n, inst.k);
    return disjoint(sa, sb);
}

BigInt count_disjoint_pairs(const ProblemInstance& inst) {
    return inst.disjoint_pair_count;
}

std::vector<int> subset_complement(std::span<const int> subset, int n) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(n) - subset.size());
    std::size_t j = 0;
    for (int e = 0; e < n; ++e) {
        if (j < subset.size() && subset[j] == e) { ++j; continue; }
        out.push_back(e);
    }
    return out;
}

} // namespace qsampler
