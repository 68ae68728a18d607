#include "qsampler/verify.hpp"

#include "qsampler/baseline.hpp"
#include "qsampler/protocol.hpp"
#include "qsampler/spectral.hpp"
#include "qsampler/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qsampler::verify {

namespace {

// ---------------------------------------------------------------------------
// Local oracles, independent of the code paths they judge.
// ---------------------------------------------------------------------------

/// Ordered disjoint pairs counted by scanning every subset pair.
BigInt brute_force_disjoint_pairs(const ProblemInstance& inst) {
    const auto side = inst.subset_count.convert_to<std::size_t>();
    std::vector<std::vector<int>> subsets;
    subsets.reserve(side);
    for (std::size_t r = 0; r < side; ++r) {
        subsets.push_back(unrank_subset(BigInt(static_cast<unsigned long long>(r)), inst.n, inst.k));
    }
    BigInt count = 0;
    for (std::size_t i = 0; i < side; ++i)
        for (std::size_t j = 0; j < side; ++j)
            if (disjoint(subsets[i], subsets[j])) ++count;
    return count;
}

/// Integer disjointness matrices for exact eigen-relation checks.
struct IntegerMatrices {
    std::size_t side = 0;
    std::vector<int> chi; ///< 0/1, row-major
    std::vector<int> b;   ///< +-1, row-major
};

IntegerMatrices integer_matrices(const ProblemInstance& inst) {
    IntegerMatrices m;
    m.side = inst.subset_count.convert_to<std::size_t>();
    std::vector<std::vector<int>> subsets;
    subsets.reserve(m.side);
    for (std::size_t r = 0; r < m.side; ++r) {
        subsets.push_back(unrank_subset(BigInt(static_cast<unsigned long long>(r)), inst.n, inst.k));
    }
    m.chi.assign(m.side * m.side, 0);
    m.b.assign(m.side * m.side, -1);
    for (std::size_t i = 0; i < m.side; ++i) {
        for (std::size_t j = 0; j < m.side; ++j) {
            if (disjoint(subsets[i], subsets[j])) {
                m.chi[i * m.side + j] = 1;
                m.b[i * m.side + j] = 1;
            }
        }
    }
    return m;
}

double gaussian(SplitMix64& rng) {
    // Box-Muller; u in (0,1] keeps the log finite.
    const double u = 1.0 - rng.next_unit();
    const double v = rng.next_unit();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * v);
}

Matrix random_orthogonal(std::size_t dim, SplitMix64& rng) {
    Matrix m(dim, dim);
    while (true) {
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                m(i, j) = gaussian(rng);
        bool ok = true;
        for (std::size_t c = 0; c < dim && ok; ++c) {
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t prev = 0; prev < c; ++prev) {
                    double proj = 0.0;
                    for (std::size_t r = 0; r < dim; ++r) proj += m(r, prev) * m(r, c);
                    for (std::size_t r = 0; r < dim; ++r) m(r, c) -= proj * m(r, prev);
                }
            }
            double norm_sq = 0.0;
            for (std::size_t r = 0; r < dim; ++r) norm_sq += m(r, c) * m(r, c);
            if (norm_sq < 1e-12) { ok = false; break; } // degenerate draw, retry
            const double inv = 1.0 / std::sqrt(norm_sq);
            for (std::size_t r = 0; r < dim; ++r) m(r, c) *= inv;
        }
        if (ok) return m;
    }
}

ComplexMatrix random_unitary(std::size_t dim, SplitMix64& rng) {
    ComplexMatrix m(dim, dim);
    while (true) {
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                m(i, j) = {gaussian(rng), gaussian(rng)};
        bool ok = true;
        for (std::size_t c = 0; c < dim && ok; ++c) {
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t prev = 0; prev < c; ++prev) {
                    std::complex<double> proj = 0.0;
                    for (std::size_t r = 0; r < dim; ++r) proj += std::conj(m(r, prev)) * m(r, c);
                    for (std::size_t r = 0; r < dim; ++r) m(r, c) -= proj * m(r, prev);
                }
            }
            double norm_sq = 0.0;
            for (std::size_t r = 0; r < dim; ++r) norm_sq += std::norm(m(r, c));
            if (norm_sq < 1e-12) { ok = false; break; }
            const double inv = 1.0 / std::sqrt(norm_sq);
            for (std::size_t r = 0; r < dim; ++r) m(r, c) *= inv;
        }
        if (ok) return m;
    }
}

/// vec(X) with row-major pair ordering, matching the distribution tables.
std::vector<std::complex<double>> vectorize(const ComplexMatrix& m) {
    std::vector<std::complex<double>> v;
    v.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            v.push_back(m(i, j));
    return v;
}

/// Explicit Kronecker action (A (x) B) vec(M), materialized entry by entry.
std::vector<std::complex<double>> kronecker_apply(const ComplexMatrix& a, const ComplexMatrix& b,
                                                  const std::vector<std::complex<double>>& vec,
                                                  std::size_t rows, std::size_t cols) {
    std::vector<std::complex<double>> out(rows * cols, {0.0, 0.0});
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            std::complex<double> acc = 0.0;
            for (std::size_t p = 0; p < rows; ++p)
                for (std::size_t q = 0; q < cols; ++q)
                    acc += a(i, p) * b(j, q) * vec[p * cols + q];
            out[i * cols + j] = acc;
        }
    }
    return out;
}

std::string instance_label(const ProblemInstance& inst) {
    return "(" + std::to_string(inst.n) + "," + std::to_string(inst.k) + ")";
}

std::vector<ProblemInstance> oracle_instances() {
    std::vector<ProblemInstance> out;
    for (int n = 4; n <= 10; ++n) {
        for (int k : {2, 3}) {
            if (2 * k <= n) out.push_back(make_instance(n, k));
        }
    }
    return out;
}

} // namespace

CheckResult spectrum_oracle_check() {
    CheckResult result{"spectrum oracle equivalence", true, 0.0, ""};
    std::size_t instances = 0;
    for (const auto& inst : oracle_instances()) {
        const EigenSystem system = closed_form_spectrum(inst);
        BigInt dim_sum = 0;
        for (const auto& space : system.spaces) dim_sum += space.dimension;
        if (dim_sum != inst.subset_count) {
            result.passed = false;
            result.detail = "dimension sum mismatch at " + instance_label(inst);
            return result;
        }
        const auto numeric = numeric_eigendecomposition(build_chi_matrix(inst, false));
        const double residual =
            multiset_residual(closed_form_eigenvalue_multiset(system, false, 1.0), numeric);
        result.residual = std::max(result.residual, residual);
        if (!(residual <= 1e-9)) {
            result.passed = false;
            result.detail = "closed form vs numeric mismatch at " + instance_label(inst);
            return result;
        }
        ++instances;
    }
    result.detail = std::to_string(instances) + " instances, signed multisets within 1e-9";
    return result;
}

CheckResult exact_identity_check() {
    CheckResult result{"exact rational identities", true, 0.0, ""};
    std::size_t identities = 0;
    for (const auto& inst : oracle_instances()) {
        const EigenSystem system = closed_form_spectrum(inst);
        BigInt dim_sum = 0;
        Rational b_mass = 0;
        Rational chi_trace = 0;
        Rational chi_mass = 0;
        for (const auto& space : system.spaces) {
            dim_sum += space.dimension;
            b_mass += Rational(space.dimension) * space.b_eigenvalue * space.b_eigenvalue;
            chi_trace += Rational(space.dimension) * space.chi_eigenvalue;
            chi_mass += Rational(space.dimension) * space.chi_eigenvalue * space.chi_eigenvalue;
        }
        const BigInt ones = brute_force_disjoint_pairs(inst);
        const bool ok = dim_sum == inst.subset_count && b_mass == 1 && chi_trace == 0 &&
                        chi_mass == Rational(inst.disjoint_pair_count) &&
                        ones == inst.disjoint_pair_count;
        if (!ok) {
            result.passed = false;
            result.detail = "spectral identity failed at " + instance_label(inst);
            return result;
        }
        identities += 5;

        // Lemma-chain tails: the projection residual computed from the
        // brute-force Frobenius mass must telescope to the closed-form tail.
        Rational kept = 0;
        for (int g = 0; g <= inst.k; ++g) {
            kept += Rational(system.spaces[static_cast<std::size_t>(g)].dimension) *
                    system.spaces[static_cast<std::size_t>(g)].chi_eigenvalue *
                    system.spaces[static_cast<std::size_t>(g)].chi_eigenvalue;
            const Rational residual_mass = (Rational(ones) - kept) / Rational(ones);
            if (residual_mass != truncation_tail_chi(inst, g)) {
                result.passed = false;
                result.detail = "projection tail mismatch at " + instance_label(inst) +
                                " g=" + std::to_string(g);
                return result;
            }
            ++identities;
        }
    }
    result.detail = std::to_string(identities) + " identities hold at zero tolerance";
    return result;
}

CheckResult eigenvector_relation_check() {
    CheckResult result{"explicit eigenvector relations", true, 0.0, ""};
    std::size_t vectors = 0;
    for (int n = 4; n <= 8; ++n) {
        for (int k = 1; 2 * k <= n; ++k) {
            const ProblemInstance inst = make_instance(n, k);
            const IntegerMatrices m = integer_matrices(inst);
            for (int i = 1; i <= k; ++i) {
                const BigInt lambda_b = b_eigenvalue_unnormalized(inst, i);
                const EigenSystem system = closed_form_spectrum(inst);
                const Rational lambda_chi = system.spaces[static_cast<std::size_t>(i)].chi_eigenvalue;
                for (const auto& tuple : eigenvector_index_tuples(n, i)) {
                    const auto v = lovasz_eigenvector(inst, i, tuple);
                    for (std::size_t row = 0; row < m.side; ++row) {
                        long long b_acc = 0;
                        long long chi_acc = 0;
                        for (std::size_t col = 0; col < m.side; ++col) {
                            b_acc += static_cast<long long>(m.b[row * m.side + col]) * v[col];
                            chi_acc += static_cast<long long>(m.chi[row * m.side + col]) * v[col];
                        }
                        if (BigInt(b_acc) != lambda_b * v[row] ||
                            Rational(chi_acc) != lambda_chi * v[row]) {
                            result.passed = false;
                            result.detail = "eigen-relation broken at " + instance_label(inst) +
                                            " i=" + std::to_string(i);
                            return result;
                        }
                    }
                    ++vectors;
                }
            }
        }
    }
    result.detail = std::to_string(vectors) + " vectors satisfy B*v and chi*v exactly";
    return result;
}

CheckResult vectorization_identity_check(std::uint64_t seed) {
    CheckResult result{"local-operation vectorization identity", true, 0.0, ""};
    SplitMix64 rng(seed ^ 0xA5A5A5A5A5A5A5A5ull);
    std::size_t trials = 0;
    for (std::size_t dim = 2; dim <= 20; ++dim) {
        const ProblemInstance toy = make_instance(static_cast<int>(dim), 1);
        for (int trial = 0; trial < 100; ++trial) {
            const Matrix u = random_orthogonal(dim, rng);
            const Matrix v = random_orthogonal(dim, rng);
            Matrix m(dim, dim);
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j)
                    m(i, j) = gaussian(rng);
            const StateMatrix rotated = apply_local_ops(u, v, StateMatrix{toy, m, false});
            const auto oracle = kronecker_apply(ComplexMatrix::from_real(u),
                                                ComplexMatrix::from_real(v),
                                                vectorize(ComplexMatrix::from_real(m)), dim, dim);
            double worst = 0.0;
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j)
                    worst = std::max(worst,
                                     std::abs(oracle[i * dim + j] -
                                              std::complex<double>(rotated.entries(i, j))));
            result.residual = std::max(result.residual, worst);
            ++trials;
        }
        for (int trial = 0; trial < 25; ++trial) {
            const ComplexMatrix u = random_unitary(dim, rng);
            const ComplexMatrix v = random_unitary(dim, rng);
            ComplexMatrix m(dim, dim);
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j)
                    m(i, j) = {gaussian(rng), gaussian(rng)};
            const ComplexMatrix rotated = apply_local_ops(u, v, m);
            // Fixed convention: Bob's Kronecker factor is the conjugate.
            ComplexMatrix v_conj(dim, dim);
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j)
                    v_conj(i, j) = std::conj(v(i, j));
            const auto oracle = kronecker_apply(u, v_conj, vectorize(m), dim, dim);
            double worst = 0.0;
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j)
                    worst = std::max(worst, std::abs(oracle[i * dim + j] - rotated(i, j)));
            result.residual = std::max(result.residual, worst);
            ++trials;
        }
    }
    result.passed = result.residual <= 1e-12;
    result.detail = std::to_string(trials) + " random operator pairs, dims 2-20";
    return result;
}

CheckResult fidelity_identity_check() {
    CheckResult result{"fidelity-distance identity", true, 0.0, ""};
    std::size_t levels = 0;
    for (const auto& [n, k] : std::vector<std::pair<int, int>>{{6, 2}, {8, 3}}) {
        const ProblemInstance inst = make_instance(n, k);
        const EigenSystem basis = orthonormal_eigenbasis(inst);
        const StateMatrix chi = build_chi_matrix(inst, true);
        for (int g = 0; g <= k; ++g) {
            const TruncationPlan plan = plan_at_cutoff(inst, g);
            const StateMatrix psi = truncate_state(chi, plan, basis, true);
            const FidelityReport report = verify_fidelity_identity(psi, chi);
            result.residual = std::max(result.residual, report.identity_residual);
            ++levels;
        }
        // Planned truncations: whenever d^2 < 2*eps the fidelity must clear 1-eps.
        for (double epsilon : {0.02, 0.05, 0.08, 0.1, 0.3, 0.6, 0.9}) {
            const TruncationPlan plan = plan_truncation(inst, epsilon);
            const StateMatrix psi = truncate_state(chi, plan, basis, true);
            const FidelityReport report = verify_fidelity_identity(psi, chi);
            if (report.dist_sq < 2 * epsilon && !(report.fidelity > 1 - epsilon)) {
                result.passed = false;
                result.detail = "implication failed at " + instance_label(inst) +
                                " eps=" + format_double(epsilon);
                return result;
            }
            result.residual = std::max(result.residual, report.identity_residual);
            ++levels;
        }
    }
    result.passed = result.passed && result.residual <= 1e-12;
    result.detail = std::to_string(levels) + " truncation levels, residual below 1e-12";
    return result;
}

CheckResult worked_instance_check() {
    CheckResult result{"worked instance n=6 k=2", true, 0.0, ""};
    const ProblemInstance inst = make_instance(6, 2);

    const auto masses = projection_masses(inst);
    const bool masses_ok = masses.size() == 3 && masses[0].chi_mass == Rational(2, 5) &&
                           masses[1].chi_mass == Rational(1, 2) &&
                           masses[2].chi_mass == Rational(1, 10);

    const TruncationPlan plan = plan_truncation(inst, 0.08);
    const bool plan_ok = plan.cutoff == 1 && plan.retained_rank == 6 && plan.qubits_per_party == 3;
    const double fidelity_gap = std::abs(plan.predicted_fidelity - std::sqrt(0.9));

    // Exact route: the rank-one truncation is uniform over all N^2 pairs, so
    // both its distance to the disjoint-support distribution and its leak
    // onto intersecting pairs equal 1 - D/N^2.
    const Rational n_squared = Rational(inst.subset_count * inst.subset_count);
    const Rational uniform_gap = 1 - Rational(inst.disjoint_pair_count) / n_squared;
    const bool exact_ok = uniform_gap == Rational(3, 5);

    // Float corroboration through the full pipeline.
    const EigenSystem basis = orthonormal_eigenbasis(inst);
    const StateMatrix chi = build_chi_matrix(inst, true);
    const StateMatrix flat = truncate_state(chi, plan_at_cutoff(inst, 0), basis, true);
    const double tvd_float = tvd(induced_distribution(chi), induced_distribution(flat));
    const double violation_float = disjointness_violation_mass(induced_distribution(flat));
    const double float_gap =
        std::max(std::abs(tvd_float - 0.6), std::abs(violation_float - 0.6));

    result.residual = std::max(fidelity_gap, float_gap);
    result.passed = masses_ok && plan_ok && exact_ok && fidelity_gap <= 1e-12 &&
                    float_gap <= 1e-12;
    result.detail = "chi masses (2/5,1/2,1/10); plan(0.08) -> g=1 t=6; uniform-truncation "
                    "gap = 3/5 exactly";
    return result;
}

CheckResult decay_bound_check() {
    CheckResult result{"projection decay bounds", true, 0.0, ""};
    std::size_t comparisons = 0;
    for (const auto& [n, k] : std::vector<std::pair<int, int>>{{6, 2}, {9, 3}, {12, 3}, {16, 4}}) {
        const ProblemInstance inst = make_instance(n, k);
        for (const auto& entry : decay_ratios(inst)) {
            if (!(entry.ratio > 0) || entry.ratio > entry.bound) {
                result.passed = false;
                result.detail = "decay bound violated at " + instance_label(inst) +
                                " i=" + std::to_string(entry.index);
                return result;
            }
            ++comparisons;
        }
    }
    result.detail = std::to_string(comparisons) + " exact ratio comparisons";
    return result;
}

CheckResult sampling_check(std::uint64_t seed, std::size_t count) {
    CheckResult result{"seeded sampling fidelity", true, 0.0, ""};
    const ProblemInstance inst = make_instance(6, 2);
    const OutcomeDistribution exact = induced_distribution(build_chi_matrix(inst, true));

    const auto draws = sample(exact, seed, count);
    const auto replay = sample(exact, seed, count);
    bool identical = draws.size() == replay.size();
    for (std::size_t i = 0; identical && i < draws.size(); ++i) {
        identical = draws[i].first.rank == replay[i].first.rank &&
                    draws[i].second.rank == replay[i].second.rank;
    }

    std::vector<std::size_t> counts(exact.probs.size(), 0);
    for (const auto& [s, t] : draws) {
        counts[static_cast<std::size_t>(s.rank) * exact.side +
               static_cast<std::size_t>(t.rank)] += 1;
    }
    double empirical_tvd = 0.0;
    double chi_square = 0.0;
    int support_cells = 0;
    bool leaked = false;
    for (std::size_t idx = 0; idx < counts.size(); ++idx) {
        const double frequency = static_cast<double>(counts[idx]) / static_cast<double>(count);
        empirical_tvd += std::abs(frequency - exact.probs[idx]);
        if (exact.probs[idx] > 0.0) {
            const double expected = exact.probs[idx] * static_cast<double>(count);
            const double gap = static_cast<double>(counts[idx]) - expected;
            chi_square += gap * gap / expected;
            ++support_cells;
        } else if (counts[idx] > 0) {
            leaked = true;
        }
    }
    empirical_tvd *= 0.5;
    const double pvalue = chi_square_upper_pvalue(chi_square, support_cells - 1);

    result.residual = empirical_tvd;
    result.passed = identical && !leaked && empirical_tvd < 0.02 && pvalue >= 0.001;
    std::ostringstream detail;
    detail << count << " draws, empirical TVD " << format_double(empirical_tvd)
           << ", chi-square p " << format_double(pvalue) << ", streams identical";
    result.detail = detail.str();
    return result;
}

CheckResult baseline_equivalence_check() {
    CheckResult result{"classical baseline equivalence", true, 0.0, ""};
    for (const auto& [n, k] : std::vector<std::pair<int, int>>{{4, 2}, {6, 2}}) {
        const ProblemInstance inst = make_instance(n, k);
        const BigInt completions = binomial(inst.n - inst.k, inst.k);

        // The two-stage protocol's analytic distribution: every (subset,
        // completion) draw is equally likely, so accumulating its decoded
        // pairs must reproduce the uniform disjoint-pair distribution.
        std::map<std::pair<BigInt, BigInt>, Rational> analytic;
        const Rational step = Rational(1) / Rational(inst.subset_count * completions);
        for (BigInt s = 0; s < inst.subset_count; ++s) {
            for (BigInt c = 0; c < completions; ++c) {
                const DisjointPair pair = decode_disjoint_pair(inst, s * completions + c);
                if (!disjoint(pair.first_subset, pair.second_subset)) {
                    result.passed = false;
                    result.detail = "decoded pair not disjoint at " + instance_label(inst);
                    return result;
                }
                analytic[{rank_subset(pair.first_subset, inst.n),
                          rank_subset(pair.second_subset, inst.n)}] += step;
            }
        }
        if (BigInt(analytic.size()) != inst.disjoint_pair_count) {
            result.passed = false;
            result.detail = "decode map is not a bijection at " + instance_label(inst);
            return result;
        }
        const Rational uniform = Rational(1) / Rational(inst.disjoint_pair_count);
        for (const auto& [pair, mass] : analytic) {
            if (mass != uniform) {
                result.passed = false;
                result.detail = "analytic distribution not uniform at " + instance_label(inst);
                return result;
            }
        }
    }

    const ProblemInstance inst = make_instance(6, 2);
    SplitMix64 rng(11);
    const ClassicalProtocolTrace trace = naive_protocol(inst, rng);
    if (trace.comm_bits != 6 || trace.shared_bits_consumed != 7) {
        result.passed = false;
        result.detail = "bit ledger mismatch for (6,2)";
        return result;
    }
    result.detail = "analytic TVD 0 (exact, exhaustive decode); ledger (6,2) = 6 comm + 7 shared";
    return result;
}

CheckResult gap_table_check() {
    CheckResult result{"resource gap table", true, 0.0, ""};
    const std::vector<std::tuple<int, int, std::int64_t>> expected = {
        {9, 3, 12}, {16, 4, 16}, {25, 5, 25}};
    for (const auto& [n, k, comm] : expected) {
        const ProblemInstance inst = make_instance(n, k);
        const GapRow row = gap_report(inst, 0.1);
        const TruncationPlan plan = plan_truncation(inst, 0.1);
        const bool row_ok = row.classical_comm_bits == comm &&
                            plan.retained_rank <= plan.rank_bound &&
                            row.quantum_qubits <= 2 * ceil_log2(inst.subset_count);
        if (!row_ok) {
            result.passed = false;
            result.detail = "gap row failed at " + instance_label(inst);
            return result;
        }
    }
    result.detail = "comm bits = k*ceil(log2 n) and t <= n^(g+1) on all three instances";
    return result;
}

std::vector<CheckResult> run_all(const Options& options) {
    std::vector<CheckResult> results;
    results.push_back(spectrum_oracle_check());
    results.push_back(exact_identity_check());
    results.push_back(eigenvector_relation_check());
    results.push_back(vectorization_identity_check(options.seed));
    results.push_back(fidelity_identity_check());
    results.push_back(worked_instance_check());
    results.push_back(decay_bound_check());
    results.push_back(sampling_check(options.seed, options.sample_count));
    results.push_back(baseline_equivalence_check());
    results.push_back(gap_table_check());
    return results;
}

// ---------------------------------------------------------------------------
// Regularized upper incomplete gamma Q(a,x) via series / continued fraction.
// ---------------------------------------------------------------------------

namespace {

double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int i = 1; i < 1000; ++i) {
        term *= x / (a + i);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_continued_fraction(double a, double x) {
    // Lentz's method for the continued fraction of Q(a,x).
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double chi_square_upper_pvalue(double statistic, int dof) {
    if (dof <= 0) throw std::invalid_argument("chi_square_upper_pvalue: dof must be positive");
    if (statistic <= 0.0) return 1.0;
    const double a = 0.5 * dof;
    const double x = 0.5 * statistic;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_continued_fraction(a, x);
}

} // namespace qsampler::verify
