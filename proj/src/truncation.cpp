#include "qsampler/truncation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qsampler {

std::vector<ProjectionMass> projection_masses(const ProblemInstance& inst) {
    if (2 * inst.k > inst.n) {
        throw std::domain_error("projection_masses: 2k > n has no disjoint pairs");
    }
    const EigenSystem system = closed_form_spectrum(inst);
    std::vector<ProjectionMass> masses;
    masses.reserve(system.spaces.size());
    for (const auto& space : system.spaces) {
        ProjectionMass mass;
        mass.index = space.index;
        mass.q = Rational(space.dimension) * space.b_eigenvalue * space.b_eigenvalue;
        mass.chi_mass = Rational(space.dimension) * space.chi_eigenvalue * space.chi_eigenvalue /
                        Rational(inst.disjoint_pair_count);
        masses.push_back(std::move(mass));
    }
    return masses;
}

std::vector<DecayRatio> decay_ratios(const ProblemInstance& inst) {
    const auto masses = projection_masses(inst);
    std::vector<DecayRatio> ratios;
    for (std::size_t i = 1; i + 1 < masses.size(); ++i) {
        if (masses[i].q == 0) continue; // ratio undefined, skip
        DecayRatio entry;
        entry.index = masses[i].index;
        entry.ratio = masses[i + 1].q / masses[i].q;
        const Rational two_n_over(2 * inst.n, entry.index + 1);
        const Rational two_k_over_n(2 * inst.k, inst.n);
        entry.bound = two_n_over * two_k_over_n * two_k_over_n;
        ratios.push_back(std::move(entry));
    }
    return ratios;
}

Rational truncation_tail_chi(const ProblemInstance& inst, int cutoff) {
    const auto masses = projection_masses(inst);
    Rational tail = 0;
    for (const auto& mass : masses) {
        if (mass.index > cutoff) tail += mass.chi_mass;
    }
    return tail;
}

namespace {

TruncationPlan fill_plan(const ProblemInstance& inst, int cutoff,
                         const std::vector<ProjectionMass>& masses) {
    TruncationPlan plan;
    plan.inst = inst;
    plan.cutoff = cutoff;
    plan.tail_q = 0;
    plan.tail_chi = 0;
    for (const auto& mass : masses) {
        if (mass.index > cutoff) {
            plan.tail_q += mass.q;
            plan.tail_chi += mass.chi_mass;
        }
    }
    plan.retained_rank = binomial(inst.n, cutoff); // telescoped sum of retained dims
    plan.predicted_fidelity = std::sqrt(to_double(Rational(1) - plan.tail_chi));
    plan.rank_bound = int_pow(BigInt(inst.n), static_cast<unsigned>(cutoff) + 1);
    plan.qubits_per_party = ceil_log2(plan.retained_rank);
    return plan;
}

} // namespace

TruncationPlan plan_truncation(const ProblemInstance& inst, double epsilon) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
        throw std::invalid_argument("plan_truncation: epsilon must lie in (0,1)");
    }
    const auto masses = projection_masses(inst);
    const Rational two_epsilon = 2 * exact_rational(epsilon);

    Rational running_chi = 0;
    for (const auto& mass : masses) running_chi += mass.chi_mass;

    int cutoff = inst.k; // the full spectrum always qualifies (tail 0)
    for (const auto& mass : masses) {
        running_chi -= mass.chi_mass;
        if (running_chi < two_epsilon) {
            cutoff = mass.index;
            break;
        }
    }
    TruncationPlan plan = fill_plan(inst, cutoff, masses);
    plan.epsilon = epsilon;
    return plan;
}

TruncationPlan plan_at_cutoff(const ProblemInstance& inst, int cutoff) {
    if (cutoff < 0 || cutoff > inst.k) {
        throw std::invalid_argument("plan_at_cutoff: cutoff must lie in [0,k]");
    }
    return fill_plan(inst, cutoff, projection_masses(inst));
}

StateMatrix truncate_state(const StateMatrix& chi, const TruncationPlan& plan,
                           const EigenSystem& basis, bool renormalize) {
    if (plan.inst.n != chi.inst.n || plan.inst.k != chi.inst.k ||
        basis.inst.n != chi.inst.n || basis.inst.k != chi.inst.k) {
        throw std::invalid_argument("truncate_state: plan/basis/state instances disagree");
    }
    if (!basis.basis.has_value()) {
        throw std::invalid_argument("truncate_state: eigensystem carries no basis");
    }
    const Matrix& v = *basis.basis;
    const std::size_t side = chi.entries.rows();
    if (v.rows() != side || v.cols() != side) {
        throw std::invalid_argument("truncate_state: basis shape mismatch");
    }
    const std::size_t group = static_cast<std::size_t>(plan.cutoff) + 1;
    if (group >= basis.group_offset.size()) {
        throw std::invalid_argument("truncate_state: cutoff beyond basis grouping");
    }
    const std::size_t kept = basis.group_offset[group];
    if (kept == side) {
        StateMatrix copy = chi;
        if (renormalize) {
            const double mass = frobenius_norm_sq(copy.entries);
            if (mass <= 0.0) throw std::domain_error("truncate_state: zero state");
            copy.entries *= 1.0 / std::sqrt(mass);
            copy.normalized = true;
        }
        return copy;
    }

    Matrix kept_columns(side, kept);
    for (std::size_t r = 0; r < side; ++r)
        for (std::size_t c = 0; c < kept; ++c)
            kept_columns(r, c) = v(r, c);

    const Matrix coefficients = kept_columns.transposed() * chi.entries * kept_columns;
    Matrix projected = kept_columns * coefficients * kept_columns.transposed();

    StateMatrix result{chi.inst, std::move(projected), false};
    if (renormalize) {
        const double mass = frobenius_norm_sq(result.entries);
        if (mass <= 0.0) throw std::domain_error("truncate_state: projection annihilated the state");
        result.entries *= 1.0 / std::sqrt(mass);
        result.normalized = true;
    }
    return result;
}

double trace_norm_distance_sq(const StateMatrix& a, const StateMatrix& b) {
    if (a.entries.rows() != b.entries.rows() || a.entries.cols() != b.entries.cols()) {
        throw std::invalid_argument("trace_norm_distance_sq: shape mismatch");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.entries.rows(); ++i) {
        for (std::size_t j = 0; j < a.entries.cols(); ++j) {
            const double d = a.entries(i, j) - b.entries(i, j);
            acc += d * d;
        }
    }
    return acc;
}

FidelityReport verify_fidelity_identity(const StateMatrix& psi, const StateMatrix& chi) {
    if (!psi.normalized || !chi.normalized) {
        throw std::invalid_argument("verify_fidelity_identity: both states must be normalized");
    }
    const double psi_mass = frobenius_norm_sq(psi.entries);
    const double chi_mass = frobenius_norm_sq(chi.entries);
    if (std::abs(psi_mass - 1.0) > 1e-9 || std::abs(chi_mass - 1.0) > 1e-9) {
        throw std::invalid_argument("verify_fidelity_identity: normalized flag is stale");
    }
    FidelityReport report;
    report.fidelity = entrywise_dot(psi.entries, chi.entries);
    report.dist_sq = trace_norm_distance_sq(psi, chi);
    report.identity_residual = std::abs(report.dist_sq - (2.0 - 2.0 * report.fidelity));
    return report;
}

} // namespace qsampler
