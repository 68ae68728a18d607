#include "qsampler/reports.hpp"

#include "qsampler/truncation.hpp"

#include <sstream>

namespace qsampler::reports {

namespace {

json space_entry(const Eigenspace& space) {
    json entry;
    entry["i"] = space.index;
    entry["dim"] = space.dimension.str();
    entry["lambda_B_num"] = boost::multiprecision::numerator(space.b_eigenvalue).str();
    entry["lambda_B_den"] = boost::multiprecision::denominator(space.b_eigenvalue).str();
    entry["lambda_chi"] = boost::multiprecision::numerator(space.chi_eigenvalue).str();
    return entry;
}

} // namespace

json spectrum_report(const ProblemInstance& inst, const EigenSystem& system,
                     std::optional<double> oracle_residual) {
    json report;
    report["n"] = inst.n;
    report["k"] = inst.k;
    report["N"] = inst.subset_count.str();
    report["D"] = inst.disjoint_pair_count.str();
    report["degenerate"] = system.degenerate;

    json spaces = json::array();
    if (system.degenerate) {
        for (const auto& space : system.spaces) spaces.push_back(space_entry(space));
        report["note"] = "2k > n: no disjoint pairs, the state matrix is zero";
    } else {
        const auto masses = projection_masses(inst);
        for (std::size_t s = 0; s < system.spaces.size(); ++s) {
            json entry = space_entry(system.spaces[s]);
            entry["q"] = rational_string(masses[s].q);
            entry["chi_mass"] = rational_string(masses[s].chi_mass);
            spaces.push_back(std::move(entry));
        }
    }
    report["spaces"] = std::move(spaces);
    if (oracle_residual.has_value()) {
        report["numeric_oracle"] = {{"checked", true}, {"max_residual", *oracle_residual}};
    } else {
        report["numeric_oracle"] = {{"checked", false}};
    }
    return report;
}

std::string spectrum_csv(const ProblemInstance& inst, const EigenSystem& system) {
    std::ostringstream out;
    out << "i,dim,lambda_B_num,lambda_B_den,lambda_chi,q,chi_mass\n";
    std::vector<ProjectionMass> masses;
    if (!system.degenerate) masses = projection_masses(inst);
    for (std::size_t s = 0; s < system.spaces.size(); ++s) {
        const auto& space = system.spaces[s];
        out << space.index << ',' << space.dimension.str() << ','
            << boost::multiprecision::numerator(space.b_eigenvalue).str() << ','
            << boost::multiprecision::denominator(space.b_eigenvalue).str() << ','
            << boost::multiprecision::numerator(space.chi_eigenvalue).str() << ',';
        if (system.degenerate) {
            out << "0,0\n";
        } else {
            out << rational_string(masses[s].q) << ',' << rational_string(masses[s].chi_mass)
                << '\n';
        }
    }
    return out.str();
}

namespace {

json plan_body(const TruncationPlan& plan) {
    json report;
    report["n"] = plan.inst.n;
    report["k"] = plan.inst.k;
    report["epsilon"] = plan.epsilon;
    report["g"] = plan.cutoff;
    report["t"] = plan.retained_rank.str();
    report["tail_q"] = rational_string(plan.tail_q);
    report["tail_chi"] = rational_string(plan.tail_chi);
    report["fidelity"] = plan.predicted_fidelity;
    report["qubits_per_party"] = plan.qubits_per_party;
    report["paper_g_bound"] = plan.rank_bound.str();
    return report;
}

} // namespace

json truncation_report(const TruncationPlan& plan,
                       std::optional<double> fidelity_identity_residual) {
    json report = plan_body(plan);
    if (fidelity_identity_residual.has_value()) {
        report["fidelity_identity_residual"] = *fidelity_identity_residual;
    } else {
        report["closed_form_only"] = true;
    }
    return report;
}

std::string truncation_csv(const TruncationPlan& plan,
                           std::optional<double> fidelity_identity_residual) {
    std::ostringstream out;
    out << "n,k,epsilon,g,t,tail_q,tail_chi,fidelity,qubits_per_party,paper_g_bound,"
           "fidelity_identity_residual\n";
    out << plan.inst.n << ',' << plan.inst.k << ',' << format_double(plan.epsilon) << ','
        << plan.cutoff << ',' << plan.retained_rank.str() << ',' << rational_string(plan.tail_q)
        << ',' << rational_string(plan.tail_chi) << ',' << format_double(plan.predicted_fidelity)
        << ',' << plan.qubits_per_party << ',' << plan.rank_bound.str() << ',';
    if (fidelity_identity_residual.has_value()) {
        out << format_double(*fidelity_identity_residual);
    }
    out << '\n';
    return out.str();
}

std::string samples_csv(const ProblemInstance& inst,
                        const std::vector<std::pair<SubsetIndex, SubsetIndex>>& draws) {
    std::ostringstream out;
    out << "sample_index,S,T\n";
    for (std::size_t i = 0; i < draws.size(); ++i) {
        out << i << ',';
        const auto s = unrank_subset(BigInt(draws[i].first.rank), inst.n, inst.k);
        const auto t = unrank_subset(BigInt(draws[i].second.rank), inst.n, inst.k);
        for (std::size_t e = 0; e < s.size(); ++e) out << (e ? " " : "") << s[e];
        out << ',';
        for (std::size_t e = 0; e < t.size(); ++e) out << (e ? " " : "") << t[e];
        out << '\n';
    }
    return out.str();
}

std::string matrix_csv(const Matrix& matrix) {
    std::ostringstream out;
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        for (std::size_t j = 0; j < matrix.cols(); ++j) {
            out << (j ? "," : "") << format_double(matrix(i, j));
        }
        out << '\n';
    }
    return out.str();
}

json distribution_report(const OutcomeDistribution& dist) {
    json pairs = json::array();
    for (std::size_t idx = 0; idx < dist.probs.size(); ++idx) {
        if (dist.probs[idx] <= 0.0) continue;
        pairs.push_back({idx / dist.side, idx % dist.side, dist.probs[idx]});
    }
    json report;
    report["n"] = dist.inst.n;
    report["k"] = dist.inst.k;
    report["pairs"] = std::move(pairs);
    return report;
}

json simulation_summary_report(const SimulationSummary& summary) {
    json report = plan_body(summary.plan);
    report["seed"] = summary.seed;
    report["samples"] = summary.samples;
    report["analytic_tvd_exact_vs_truncated"] = summary.analytic_tvd;
    report["empirical_tvd_vs_truncated"] = summary.empirical_tvd;
    report["violation_mass"] = summary.violation_mass;
    report["support_size"] = summary.support_size;
    return report;
}

std::string gap_table_csv(const std::vector<GapRow>& rows) {
    std::ostringstream out;
    out << "n,k,epsilon,quantum_qubits,classical_comm_bits,classical_shared_bits\n";
    for (const auto& row : rows) {
        out << row.n << ',' << row.k << ',' << format_double(row.epsilon) << ','
            << row.quantum_qubits << ',' << row.classical_comm_bits << ','
            << row.classical_shared_bits << '\n';
    }
    return out.str();
}

json gap_table_report(const std::vector<GapRow>& rows) {
    json report;
    report["epsilon"] = rows.empty() ? json() : json(rows.front().epsilon);
    json list = json::array();
    for (const auto& row : rows) {
        list.push_back({{"n", row.n},
                        {"k", row.k},
                        {"epsilon", row.epsilon},
                        {"quantum_qubits", row.quantum_qubits},
                        {"classical_comm_bits", row.classical_comm_bits},
                        {"classical_shared_bits", row.classical_shared_bits}});
    }
    report["rows"] = std::move(list);
    return report;
}

json verification_report(const std::vector<verify::CheckResult>& checks) {
    json report;
    json list = json::array();
    bool all = true;
    for (const auto& check : checks) {
        all = all && check.passed;
        list.push_back({{"name", check.name},
                        {"passed", check.passed},
                        {"residual", check.residual},
                        {"detail", check.detail}});
    }
    report["checks"] = std::move(list);
    report["all_passed"] = all;
    return report;
}

} // namespace qsampler::reports
