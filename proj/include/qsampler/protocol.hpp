#pragma once

#include "qsampler/rng.hpp"
#include "qsampler/spectral.hpp"
#include "qsampler/truncation.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace qsampler {

enum class Party { alice, bob };

/// One party's unitary, applied to its half of the shared state before the
/// computational-basis measurement.
struct LocalOperation {
    ComplexMatrix matrix;
    Party party = Party::alice;
};

/// U_A * M * U_B^dagger: the matrix representation of the state after both
/// local operations. Equivalently, (U_A (x) conj(U_B)) acting on the
/// vectorized state; for real orthogonal operators the conjugate is moot and
/// this is the plain (U_A (x) U_B) Kronecker action.
/// @throws std::invalid_argument on dimension mismatch or non-unitary input
ComplexMatrix apply_local_ops(const ComplexMatrix& alice_op, const ComplexMatrix& bob_op,
                              const ComplexMatrix& state);

/// Real fast path: U_A * M * U_B^T for orthogonal operators.
StateMatrix apply_local_ops(const Matrix& alice_op, const Matrix& bob_op,
                            const StateMatrix& state);

ComplexMatrix apply_local_ops(const LocalOperation& alice, const LocalOperation& bob,
                              const ComplexMatrix& state);

/// Probabilities over ordered pairs of subset ranks, dense row-major:
/// probs[i*N + j] = P(Alice reads subset i, Bob reads subset j).
struct OutcomeDistribution {
    ProblemInstance inst;
    std::size_t side = 0;        ///< N
    std::vector<double> probs;   ///< length N*N, sums to 1
    std::size_t support_size = 0;
};

/// Born probabilities of a computational-basis measurement:
/// p(i,j) = |m_ij|^2 / sum |m_ij|^2 (renormalized explicitly to absorb
/// floating-point drift in the state's mass).
/// @throws std::domain_error on a zero state
/// @throws std::length_error when N*N exceeds the distribution guard
OutcomeDistribution induced_distribution(const StateMatrix& state);

/// Deterministic inverse-CDF sampling over the pair table in index order.
/// The same seed always yields the same stream.
std::vector<std::pair<SubsetIndex, SubsetIndex>> sample(const OutcomeDistribution& dist,
                                                        std::uint64_t seed, std::size_t count);

/// Total variational distance, (1/2) * L1.
/// @throws std::invalid_argument when the index spaces differ
double tvd(const OutcomeDistribution& p, const OutcomeDistribution& q);

/// Probability mass on pairs that are NOT disjoint: how much a truncated
/// state leaks outside the disjoint-pair support.
double disjointness_violation_mass(const OutcomeDistribution& dist);

/// Side-by-side resource accounting for one plan: the quantum protocol
/// holds ceil(log2 t) qubits per party and communicates nothing.
struct ResourceLedger {
    std::int64_t entangled_qubits = 0;
    std::int64_t classical_comm_bits = 0;
    std::int64_t classical_shared_bits = 0;
    std::int64_t total_classical() const { return classical_comm_bits + classical_shared_bits; }
};

ResourceLedger resource_report(const TruncationPlan& plan);

} // namespace qsampler
