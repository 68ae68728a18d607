#pragma once

#include "qsampler/baseline.hpp"
#include "qsampler/protocol.hpp"
#include "qsampler/spectral.hpp"
#include "qsampler/truncation.hpp"
#include "qsampler/verify.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace qsampler::reports {

using nlohmann::json;

/// Eigenspace table: {i, dim, lambda_B_num, lambda_B_den, lambda_chi} per
/// space, plus the exact per-space masses and (when computed) the numeric
/// oracle's worst residual. Exact values ride as decimal / num-den strings.
json spectrum_report(const ProblemInstance& inst, const EigenSystem& system,
                     std::optional<double> oracle_residual);
std::string spectrum_csv(const ProblemInstance& inst, const EigenSystem& system);

/// Plan report: {n, k, epsilon, g, t, tail_q, tail_chi, fidelity,
/// qubits_per_party, paper_g_bound} plus the measured identity residual
/// when the state fits the matrix guard.
json truncation_report(const TruncationPlan& plan,
                       std::optional<double> fidelity_identity_residual);
std::string truncation_csv(const TruncationPlan& plan,
                           std::optional<double> fidelity_identity_residual);

/// Samples as CSV rows (sample_index, S as sorted elements, T as sorted
/// elements), elements space-separated.
std::string samples_csv(const ProblemInstance& inst,
                        const std::vector<std::pair<SubsetIndex, SubsetIndex>>& draws);

/// State matrix entries as plain CSV (one row per subset rank).
std::string matrix_csv(const Matrix& matrix);

/// Distribution dump: {"pairs": [[rank_i, rank_j, prob], ...]} over the
/// support, in pair-index order.
json distribution_report(const OutcomeDistribution& dist);

struct SimulationSummary {
    TruncationPlan plan;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    double analytic_tvd = 0.0;   ///< exact chi vs truncated, both analytic
    double empirical_tvd = 0.0;  ///< draws vs the truncated distribution
    double violation_mass = 0.0; ///< truncated mass on intersecting pairs
    std::size_t support_size = 0;
};
json simulation_summary_report(const SimulationSummary& summary);

/// Gap table, one row per instance:
/// n,k,epsilon,quantum_qubits,classical_comm_bits,classical_shared_bits.
std::string gap_table_csv(const std::vector<GapRow>& rows);
json gap_table_report(const std::vector<GapRow>& rows);

json verification_report(const std::vector<verify::CheckResult>& checks);

} // namespace qsampler::reports
