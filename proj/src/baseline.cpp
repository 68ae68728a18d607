#include "qsampler/baseline.hpp"

#include "qsampler/protocol.hpp"
#include "qsampler/truncation.hpp"

#include <stdexcept>

namespace qsampler {

namespace {

/// Decode (subset rank, completion rank) into the ordered pair.
DisjointPair decode_pair(const ProblemInstance& inst, const BigInt& first_rank,
                         const BigInt& completion_rank) {
    DisjointPair pair;
    pair.first_subset = unrank_subset(first_rank, inst.n, inst.k);
    const auto complement = subset_complement(pair.first_subset, inst.n);
    const auto local = unrank_subset(completion_rank, inst.n - inst.k, inst.k);
    pair.second_subset.reserve(static_cast<std::size_t>(inst.k));
    for (int position : local) {
        pair.second_subset.push_back(complement[static_cast<std::size_t>(position)]);
    }
    return pair;
}

void require_sampleable(const ProblemInstance& inst) {
    if (inst.disjoint_pair_count == 0) {
        throw std::domain_error("no disjoint pairs exist for 2k > n");
    }
}

} // namespace

DisjointPair decode_disjoint_pair(const ProblemInstance& inst, const BigInt& pair_rank) {
    if (pair_rank < 0 || pair_rank >= inst.disjoint_pair_count) {
        throw std::out_of_range("decode_disjoint_pair: pair rank outside [0, D)");
    }
    const BigInt completions = binomial(inst.n - inst.k, inst.k);
    return decode_pair(inst, pair_rank / completions, pair_rank % completions);
}

DisjointPair exact_disjoint_sampler(const ProblemInstance& inst, SplitMix64& rng) {
    require_sampleable(inst);
    return decode_disjoint_pair(inst, rng.next_below(inst.disjoint_pair_count));
}

DisjointPair exact_disjoint_sampler(const ProblemInstance& inst, std::uint64_t seed) {
    SplitMix64 rng(seed);
    return exact_disjoint_sampler(inst, rng);
}

ClassicalProtocolTrace naive_protocol(const ProblemInstance& inst, SplitMix64& rng) {
    require_sampleable(inst);
    const BigInt completions = binomial(inst.n - inst.k, inst.k);

    ClassicalProtocolTrace trace;
    trace.shared_bits_consumed = ceil_log2(inst.subset_count) + ceil_log2(completions);
    trace.comm_bits = static_cast<std::int64_t>(inst.k) * ceil_log2(BigInt(inst.n));

    const BigInt first_rank = rng.next_below(inst.subset_count);
    const BigInt completion_rank = rng.next_below(completions);
    trace.output = decode_pair(inst, first_rank, completion_rank);
    return trace;
}

ClassicalProtocolTrace naive_protocol(const ProblemInstance& inst, std::uint64_t seed) {
    SplitMix64 rng(seed);
    return naive_protocol(inst, rng);
}

GapRow gap_report(const ProblemInstance& inst, double epsilon) {
    const TruncationPlan plan = plan_truncation(inst, epsilon);
    const ResourceLedger quantum = resource_report(plan);

    GapRow row;
    row.n = inst.n;
    row.k = inst.k;
    row.epsilon = epsilon;
    row.quantum_qubits = quantum.entangled_qubits;
    row.classical_comm_bits = static_cast<std::int64_t>(inst.k) * ceil_log2(BigInt(inst.n));
    row.classical_shared_bits =
        ceil_log2(inst.subset_count) + ceil_log2(binomial(inst.n - inst.k, inst.k));
    return row;
}

} // namespace qsampler
