#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qsampler::verify {

/// One desk-scale verification: exact identities carry residual 0, numeric
/// ones the worst observed deviation.
struct CheckResult {
    std::string name;
    bool passed = false;
    double residual = 0.0;
    std::string detail;
};

struct Options {
    std::uint64_t seed = 0;
    std::size_t sample_count = 1'000'000;
};

/// The full desk-scale suite, one result per check, in a fixed order.
std::vector<CheckResult> run_all(const Options& options = {});

// Individual checks (each self-contained and deterministic).
CheckResult spectrum_oracle_check();
CheckResult exact_identity_check();
CheckResult eigenvector_relation_check();
CheckResult vectorization_identity_check(std::uint64_t seed);
CheckResult fidelity_identity_check();
CheckResult worked_instance_check();
CheckResult decay_bound_check();
CheckResult sampling_check(std::uint64_t seed, std::size_t count);
CheckResult baseline_equivalence_check();
CheckResult gap_table_check();

/// P(X >= statistic) for X ~ chi-square with `dof` degrees of freedom
/// (regularized upper incomplete gamma).
double chi_square_upper_pvalue(double statistic, int dof);

} // namespace qsampler::verify
