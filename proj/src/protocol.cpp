#include "qsampler/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qsampler {

namespace {

constexpr double kUnitaryTolerance = 1e-10;

void require_unitary(const ComplexMatrix& u, const char* label) {
    if (u.rows() != u.cols()) {
        throw std::invalid_argument(std::string(label) + ": operator must be square");
    }
    if (unitarity_defect(u) > kUnitaryTolerance) {
        throw std::invalid_argument(std::string(label) + ": operator is not unitary");
    }
}

} // namespace

ComplexMatrix apply_local_ops(const ComplexMatrix& alice_op, const ComplexMatrix& bob_op,
                              const ComplexMatrix& state) {
    require_unitary(alice_op, "apply_local_ops(alice)");
    require_unitary(bob_op, "apply_local_ops(bob)");
    if (alice_op.cols() != state.rows() || bob_op.cols() != state.cols()) {
        throw std::invalid_argument("apply_local_ops: operator/state dimension mismatch");
    }
    return alice_op * state * bob_op.adjoint();
}

StateMatrix apply_local_ops(const Matrix& alice_op, const Matrix& bob_op,
                            const StateMatrix& state) {
    if (alice_op.rows() != alice_op.cols() || bob_op.rows() != bob_op.cols()) {
        throw std::invalid_argument("apply_local_ops: operators must be square");
    }
    if (orthogonality_defect(alice_op) > kUnitaryTolerance ||
        orthogonality_defect(bob_op) > kUnitaryTolerance) {
        throw std::invalid_argument("apply_local_ops: operator is not orthogonal");
    }
    if (alice_op.cols() != state.entries.rows() || bob_op.cols() != state.entries.cols()) {
        throw std::invalid_argument("apply_local_ops: operator/state dimension mismatch");
    }
    StateMatrix out{state.inst, alice_op * state.entries * bob_op.transposed(),
                    state.normalized};
    return out;
}

ComplexMatrix apply_local_ops(const LocalOperation& alice, const LocalOperation& bob,
                              const ComplexMatrix& state) {
    if (alice.party != Party::alice || bob.party != Party::bob) {
        throw std::invalid_argument("apply_local_ops: operations assigned to the wrong parties");
    }
    return apply_local_ops(alice.matrix, bob.matrix, state);
}

OutcomeDistribution induced_distribution(const StateMatrix& state) {
    const std::size_t side = state.entries.rows();
    if (side != state.entries.cols()) {
        throw std::invalid_argument("induced_distribution: state matrix must be square");
    }
    if (side * side > distribution_guard_limit()) {
        throw std::length_error("induced_distribution: N*N exceeds the dense pair-table guard");
    }
    const double mass = frobenius_norm_sq(state.entries);
    if (mass <= 0.0) {
        throw std::domain_error("induced_distribution: zero state induces no distribution");
    }
    OutcomeDistribution dist;
    dist.inst = state.inst;
    dist.side = side;
    dist.probs.resize(side * side);
    dist.support_size = 0;
    for (std::size_t i = 0; i < side; ++i) {
        for (std::size_t j = 0; j < side; ++j) {
            const double amplitude = state.entries(i, j);
            const double p = amplitude * amplitude / mass;
            dist.probs[i * side + j] = p;
            if (p > 0.0) ++dist.support_size;
        }
    }
    return dist;
}

std::vector<std::pair<SubsetIndex, SubsetIndex>> sample(const OutcomeDistribution& dist,
                                                        std::uint64_t seed, std::size_t count) {
    // Cumulative table over the support only, in pair-index order.
    std::vector<double> cumulative;
    std::vector<std::size_t> pair_index;
    cumulative.reserve(dist.support_size);
    pair_index.reserve(dist.support_size);
    double acc = 0.0;
    for (std::size_t idx = 0; idx < dist.probs.size(); ++idx) {
        if (dist.probs[idx] <= 0.0) continue;
        acc += dist.probs[idx];
        cumulative.push_back(acc);
        pair_index.push_back(idx);
    }
    if (cumulative.empty()) {
        throw std::domain_error("sample: distribution has empty support");
    }
    cumulative.back() = 1.0; // absorb rounding in the final bucket

    SplitMix64 rng(seed);
    std::vector<std::pair<SubsetIndex, SubsetIndex>> draws;
    draws.reserve(count);
    const auto side = static_cast<std::int64_t>(dist.side);
    for (std::size_t c = 0; c < count; ++c) {
        const double u = rng.next_unit();
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const std::size_t slot = std::min<std::size_t>(
            static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
        const auto idx = static_cast<std::int64_t>(pair_index[slot]);
        draws.push_back({SubsetIndex{idx / side}, SubsetIndex{idx % side}});
    }
    return draws;
}

double tvd(const OutcomeDistribution& p, const OutcomeDistribution& q) {
    if (p.side != q.side || p.inst.n != q.inst.n || p.inst.k != q.inst.k) {
        throw std::invalid_argument("tvd: distributions live on different index spaces");
    }
    double acc = 0.0;
    for (std::size_t idx = 0; idx < p.probs.size(); ++idx) {
        acc += std::abs(p.probs[idx] - q.probs[idx]);
    }
    return 0.5 * acc;
}

double disjointness_violation_mass(const OutcomeDistribution& dist) {
    const std::size_t side = dist.side;
    double acc = 0.0;
    std::vector<std::vector<int>> subsets;
    subsets.reserve(side);
    for (std::size_t r = 0; r < side; ++r) {
        subsets.push_back(
            unrank_subset(BigInt(static_cast<unsigned long long>(r)), dist.inst.n, dist.inst.k));
    }
    for (std::size_t i = 0; i < side; ++i) {
        for (std::size_t j = 0; j < side; ++j) {
            if (!disjoint(subsets[i], subsets[j])) acc += dist.probs[i * side + j];
        }
    }
    return acc;
}

ResourceLedger resource_report(const TruncationPlan& plan) {
    ResourceLedger ledger;
    ledger.entangled_qubits = 2ll * plan.qubits_per_party;
    return ledger;
}

} // namespace qsampler
