#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qsampler/baseline.hpp"
#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

using namespace qsampler;

TEST_CASE("pair decode is a bijection onto the disjoint pairs") {
    for (const auto& [n, k] : std::vector<std::pair<int, int>>{{4, 2}, {6, 2}, {7, 3}}) {
        const auto inst = make_instance(n, k);
        std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
        for (BigInt r = 0; r < inst.disjoint_pair_count; ++r) {
            const auto pair = decode_disjoint_pair(inst, r);
            CHECK(disjoint(pair.first_subset, pair.second_subset));
            seen.insert({pair.first_subset, pair.second_subset});
        }
        CHECK(BigInt(seen.size()) == inst.disjoint_pair_count);

        // Same set as the brute-force enumeration.
        const auto subsets = oracles::colex_subsets(n, k);
        std::size_t expected = 0;
        for (const auto& s : subsets) {
            for (const auto& t : subsets) {
                if (oracles::sets_disjoint(s, t)) {
                    ++expected;
                    CHECK(seen.count({s, t}) == 1);
                }
            }
        }
        CHECK(seen.size() == expected);
    }
    const auto inst = make_instance(6, 2);
    CHECK_THROWS_AS(decode_disjoint_pair(inst, inst.disjoint_pair_count), std::out_of_range);
    CHECK_THROWS_AS(decode_disjoint_pair(inst, -1), std::out_of_range);
}

TEST_CASE("degenerate instances cannot be sampled") {
    const auto inst = make_instance(3, 2);
    CHECK_THROWS_AS(exact_disjoint_sampler(inst, 0u), std::domain_error);
    CHECK_THROWS_AS(naive_protocol(inst, 0u), std::domain_error);
}

TEST_CASE("exact sampler is uniform: per-pair frequencies within 3 sigma") {
    const auto inst = make_instance(4, 2);
    const std::size_t count = 1000000;
    SplitMix64 rng(1);
    std::map<std::pair<std::vector<int>, std::vector<int>>, std::size_t> histogram;
    for (std::size_t i = 0; i < count; ++i) {
        const auto pair = exact_disjoint_sampler(inst, rng);
        histogram[{pair.first_subset, pair.second_subset}] += 1;
    }
    REQUIRE(histogram.size() == 6);
    const double p = 1.0 / 6.0;
    const double sigma = std::sqrt(static_cast<double>(count) * p * (1.0 - p));
    for (const auto& [pair, hits] : histogram) {
        CHECK(std::abs(static_cast<double>(hits) - p * static_cast<double>(count)) <=
              3.0 * sigma);
    }
}

TEST_CASE("sampler outputs are always disjoint, sorted, in range") {
    for (const auto& [n, k] : std::vector<std::pair<int, int>>{{6, 2}, {7, 3}, {4, 2}}) {
        const auto inst = make_instance(n, k);
        SplitMix64 rng(3);
        for (int i = 0; i < 40000; ++i) {
            const auto pair = (i % 2 == 0) ? exact_disjoint_sampler(inst, rng)
                                           : naive_protocol(inst, rng).output;
            CHECK(disjoint(pair.first_subset, pair.second_subset));
            CHECK(std::is_sorted(pair.first_subset.begin(), pair.first_subset.end()));
            CHECK(std::is_sorted(pair.second_subset.begin(), pair.second_subset.end()));
            CHECK(pair.first_subset.size() == static_cast<std::size_t>(k));
            CHECK(pair.second_subset.size() == static_cast<std::size_t>(k));
            CHECK(pair.first_subset.front() >= 0);
            CHECK(pair.second_subset.back() < n);
        }
    }
}

TEST_CASE("naive protocol bit ledger") {
    const auto trace = naive_protocol(make_instance(6, 2), 5u);
    CHECK(trace.comm_bits == 6);                 // 2 * ceil(log2 6)
    CHECK(trace.shared_bits_consumed == 7);      // ceil(log2 15) + ceil(log2 6)

    const auto wide = naive_protocol(make_instance(16, 4), 5u);
    CHECK(wide.comm_bits == 16);                 // 4 * ceil(log2 16)
    CHECK(wide.shared_bits_consumed == 20);      // ceil(log2 1820) + ceil(log2 495)

    // 2k = n forces Bob's completion: it costs no shared bits.
    const auto forced = naive_protocol(make_instance(4, 2), 5u);
    CHECK(forced.shared_bits_consumed == 3);     // ceil(log2 6) + 0
}

TEST_CASE("naive protocol and the exact sampler agree empirically") {
    const auto inst = make_instance(6, 2);
    const std::size_t count = 1000000;

    std::map<std::pair<BigInt, BigInt>, double> naive_freq;
    std::map<std::pair<BigInt, BigInt>, double> exact_freq;
    const double weight = 1.0 / static_cast<double>(count);
    SplitMix64 naive_rng(100);
    SplitMix64 exact_rng(200);
    for (std::size_t i = 0; i < count; ++i) {
        const auto a = naive_protocol(inst, naive_rng).output;
        naive_freq[{rank_subset(a.first_subset, 6), rank_subset(a.second_subset, 6)}] += weight;
        const auto b = exact_disjoint_sampler(inst, exact_rng);
        exact_freq[{rank_subset(b.first_subset, 6), rank_subset(b.second_subset, 6)}] += weight;
    }
    double l1 = 0.0;
    for (const auto& [pair, freq] : naive_freq) l1 += std::abs(freq - exact_freq[pair]);
    for (const auto& [pair, freq] : exact_freq) {
        if (naive_freq.find(pair) == naive_freq.end()) l1 += freq;
    }
    CHECK(0.5 * l1 < 0.02);
}

TEST_CASE("gap report rows") {
    const auto nine = gap_report(make_instance(9, 3), 0.1);
    CHECK(nine.quantum_qubits == 12);        // g=2, t=36, 2*ceil(log2 36)
    CHECK(nine.classical_comm_bits == 12);   // 3 * ceil(log2 9)
    CHECK(nine.classical_shared_bits == 12); // ceil(log2 84) + ceil(log2 20)

    const auto sixteen = gap_report(make_instance(16, 4), 0.1);
    CHECK(sixteen.classical_comm_bits == 16);
    CHECK(sixteen.quantum_qubits == 14);     // g=2, t=120

    const auto twentyfive = gap_report(make_instance(25, 5), 0.1);
    CHECK(twentyfive.classical_comm_bits == 25);
    CHECK(twentyfive.quantum_qubits == 18);  // g=2, t=300

    // The trivial full-state protocol is always an upper bound.
    for (int n = 4; n <= 12; ++n) {
        for (int k = 2; 2 * k <= n; ++k) {
            const auto inst = make_instance(n, k);
            const auto row = gap_report(inst, 0.1);
            CHECK(row.quantum_qubits <= 2 * ceil_log2(inst.subset_count));
        }
    }
}
