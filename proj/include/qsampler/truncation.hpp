#pragma once

#include "qsampler/spectral.hpp"

namespace qsampler {

/// Per-eigenspace spectral mass, exact. `q` is the squared projection of a
/// unit-normalized row of B onto E_i, d_i*(lambda_i^B/C(n,k))^2; `chi_mass`
/// is the normalized chi state's mass in E_i, d_i*(lambda_i^chi)^2/D.
/// Each series sums to exactly 1.
struct ProjectionMass {
    int index = 0;
    Rational q;
    Rational chi_mass;
};

/// @throws std::domain_error when 2k > n (no spectrum to weigh)
std::vector<ProjectionMass> projection_masses(const ProblemInstance& inst);

/// Consecutive-mass ratio against the coarse decay bound
/// (2n/(i+1))*(2k/n)^2, both exact. Entries exist for i >= 1 with q_i > 0.
struct DecayRatio {
    int index = 0;     ///< i, for the ratio q_{i+1}/q_i
    Rational ratio;
    Rational bound;
};

std::vector<DecayRatio> decay_ratios(const ProblemInstance& inst);

/// A low-rank cutoff: keep eigenspaces E_0..E_g whole (within a space the
/// eigenvalues are equal, so any finer cut would be arbitrary).
struct TruncationPlan {
    ProblemInstance inst;
    double epsilon = 0.0;
    int cutoff = 0;             ///< g: highest retained eigenspace index
    BigInt retained_rank;       ///< t = sum of retained dimensions = C(n,g)
    Rational tail_q;            ///< sum of q_i over i > g
    Rational tail_chi;          ///< sum of chi_mass_i over i > g
    double predicted_fidelity = 0.0; ///< sqrt(1 - tail_chi)
    BigInt rank_bound;          ///< n^(g+1), the coarse cap on t
    int qubits_per_party = 0;   ///< ceil(log2 t)
};

/// Exact tail mass of the chi state beyond cutoff g.
Rational truncation_tail_chi(const ProblemInstance& inst, int cutoff);

/// Smallest g in [0,k] with tail_chi(g) < 2*epsilon, compared exactly
/// against the binary expansion of epsilon.
/// @throws std::invalid_argument unless 0 < epsilon < 1
/// @throws std::domain_error when 2k > n
TruncationPlan plan_truncation(const ProblemInstance& inst, double epsilon);

/// Plan pinned at an explicit cutoff; epsilon is recorded as 0 (no target).
TruncationPlan plan_at_cutoff(const ProblemInstance& inst, int cutoff);

/// Projection of a normalized chi matrix onto span(E_0..E_g), rotated back
/// to the computational basis: V_t (V_t^T M V_t) V_t^T. With renormalize the
/// result is rescaled to unit Frobenius mass. g = k returns the input
/// unchanged (full-rank projection).
/// @throws std::invalid_argument on plan/basis/instance mismatch
StateMatrix truncate_state(const StateMatrix& chi, const TruncationPlan& plan,
                           const EigenSystem& basis, bool renormalize);

/// Squared trace-norm (Frobenius) distance: sum of squared entry differences.
double trace_norm_distance_sq(const StateMatrix& a, const StateMatrix& b);

/// Fidelity F = <psi|chi> of two normalized states via their matrix
/// representations, with the squared-distance identity d^2 = 2 - 2F made
/// explicit: identity_residual = |d^2 - (2 - 2F)|, expected below 1e-12.
/// Hence d^2 < 2*epsilon implies F > 1 - epsilon.
struct FidelityReport {
    double dist_sq = 0.0;
    double fidelity = 0.0;
    double identity_residual = 0.0;
};

/// @throws std::invalid_argument unless both inputs are normalized
FidelityReport verify_fidelity_identity(const StateMatrix& psi, const StateMatrix& chi);

} // namespace qsampler
