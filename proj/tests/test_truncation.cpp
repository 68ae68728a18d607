#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qsampler/truncation.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <stdexcept>

using namespace qsampler;

namespace {

std::vector<ProblemInstance> desk_instances() {
    std::vector<ProblemInstance> out;
    for (int n = 4; n <= 10; ++n) {
        for (int k = 2; 2 * k <= n && k <= 3; ++k) out.push_back(make_instance(n, k));
    }
    return out;
}

} // namespace

TEST_CASE("projection masses: worked values and completeness") {
    const auto masses = projection_masses(make_instance(6, 2));
    REQUIRE(masses.size() == 3);
    CHECK(masses[0].q == Rational(1, 25));
    CHECK(masses[1].q == Rational(4, 5));
    CHECK(masses[2].q == Rational(4, 25));
    CHECK(masses[0].chi_mass == Rational(2, 5));
    CHECK(masses[1].chi_mass == Rational(1, 2));
    CHECK(masses[2].chi_mass == Rational(1, 10));

    for (const auto& inst : desk_instances()) {
        Rational q_total = 0;
        Rational chi_total = 0;
        for (const auto& mass : projection_masses(inst)) {
            CHECK(mass.q >= 0);
            CHECK(mass.chi_mass >= 0);
            q_total += mass.q;
            chi_total += mass.chi_mass;
        }
        CHECK(q_total == 1);
        CHECK(chi_total == 1);
    }
    CHECK_THROWS_AS(projection_masses(make_instance(3, 2)), std::domain_error);
}

TEST_CASE("q_i matches the squared projection of a unit-normalized row of B") {
    for (const auto& [n, k] : std::vector<std::pair<int, int>>{{6, 2}, {8, 3}}) {
        const auto inst = make_instance(n, k);
        const auto system = orthonormal_eigenbasis(inst);
        const auto b = build_b_matrix(inst);
        const auto masses = projection_masses(inst);
        const std::size_t side = b.entries.rows();
        const double row_norm = std::sqrt(static_cast<double>(side));

        for (std::size_t row : {std::size_t{0}, side / 2}) {
            for (std::size_t s = 0; s < masses.size(); ++s) {
                double group_mass = 0.0;
                for (std::size_t c = system.group_offset[s]; c < system.group_offset[s + 1]; ++c) {
                    double dot = 0.0;
                    for (std::size_t j = 0; j < side; ++j) {
                        dot += b.entries(row, j) / row_norm * (*system.basis)(j, c);
                    }
                    group_mass += dot * dot;
                }
                CHECK(group_mass == doctest::Approx(to_double(masses[s].q)).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("decay ratios against the coarse bound") {
    const auto ratios = decay_ratios(make_instance(6, 2));
    REQUIRE(ratios.size() == 1);
    CHECK(ratios[0].index == 1);
    CHECK(ratios[0].ratio == Rational(1, 5));
    CHECK(ratios[0].bound == Rational(8, 3));
    CHECK(ratios[0].ratio <= ratios[0].bound);

    const auto nine = decay_ratios(make_instance(9, 3));
    REQUIRE(!nine.empty());
    CHECK(nine[0].bound == Rational(4));
    for (const auto& entry : nine) CHECK(entry.ratio <= entry.bound);

    // k = ceil(sqrt(n)) instances, the regime the bound is built for.
    for (const auto& [n, k] : std::vector<std::pair<int, int>>{{4, 2}, {9, 3}, {16, 4}, {25, 5}}) {
        for (const auto& entry : decay_ratios(make_instance(n, k))) {
            CHECK(entry.ratio > 0);
            CHECK(entry.ratio <= entry.bound);
        }
    }
}

TEST_CASE("truncation plans: worked values and edge epsilons") {
    const auto inst = make_instance(6, 2);
    const auto plan = plan_truncation(inst, 0.08);
    CHECK(plan.cutoff == 1);
    CHECK(plan.retained_rank == 6);
    CHECK(plan.tail_chi == Rational(1, 10));
    CHECK(plan.tail_q == Rational(4, 25));
    CHECK(plan.qubits_per_party == 3);
    CHECK(plan.rank_bound == 36);
    CHECK(plan.predicted_fidelity == doctest::Approx(std::sqrt(0.9)).epsilon(1e-15));

    const auto flat = plan_truncation(inst, 0.6);
    CHECK(flat.cutoff == 0);
    CHECK(flat.retained_rank == 1);
    CHECK(flat.tail_chi == Rational(3, 5));

    CHECK(plan_truncation(inst, 0.999).cutoff == 0);

    CHECK_THROWS_AS(plan_truncation(inst, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(plan_truncation(inst, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(plan_truncation(inst, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(plan_truncation(inst, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(plan_at_cutoff(inst, -1), std::invalid_argument);
    CHECK_THROWS_AS(plan_at_cutoff(inst, 3), std::invalid_argument);
}

TEST_CASE("tail mass decreases strictly to zero and the rank bound holds") {
    for (const auto& inst : desk_instances()) {
        Rational previous = 2; // above any tail
        for (int g = 0; g <= inst.k; ++g) {
            const auto plan = plan_at_cutoff(inst, g);
            CHECK(plan.tail_chi < previous);
            CHECK(plan.retained_rank <= plan.rank_bound);
            CHECK(plan.qubits_per_party == ceil_log2(plan.retained_rank));
            previous = plan.tail_chi;
        }
        CHECK(plan_at_cutoff(inst, inst.k).tail_chi == 0);
    }
}

TEST_CASE("minimality: one eigenspace less would miss the target") {
    for (const auto& inst : desk_instances()) {
        for (double epsilon : {0.02, 0.05, 0.1, 0.3, 0.6, 0.9}) {
            const auto plan = plan_truncation(inst, epsilon);
            const Rational bound = 2 * exact_rational(epsilon);
            CHECK(plan.tail_chi < bound);
            if (plan.cutoff > 0) {
                CHECK(truncation_tail_chi(inst, plan.cutoff - 1) >= bound);
            }
        }
    }
}

TEST_CASE("truncate_state worked values") {
    const auto inst = make_instance(6, 2);
    const auto basis = orthonormal_eigenbasis(inst);
    const auto chi = build_chi_matrix(inst, true);

    const auto full = truncate_state(chi, plan_at_cutoff(inst, 2), basis, false);
    for (std::size_t i = 0; i < 15; ++i)
        for (std::size_t j = 0; j < 15; ++j)
            CHECK(full.entries(i, j) == chi.entries(i, j));

    const auto flat = truncate_state(chi, plan_at_cutoff(inst, 0), basis, true);
    for (std::size_t i = 0; i < 15; ++i)
        for (std::size_t j = 0; j < 15; ++j)
            CHECK(flat.entries(i, j) == doctest::Approx(1.0 / 15.0).epsilon(1e-12));

    const auto middle = truncate_state(chi, plan_at_cutoff(inst, 1), basis, false);
    CHECK(frobenius_norm_sq(middle.entries) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK_FALSE(middle.normalized);
}

TEST_CASE("unrenormalized projection distance telescopes to the exact tail") {
    for (const auto& [n, k] : std::vector<std::pair<int, int>>{{6, 2}, {8, 3}, {6, 3}}) {
        const auto inst = make_instance(n, k);
        const auto basis = orthonormal_eigenbasis(inst);
        const auto chi = build_chi_matrix(inst, true);
        for (int g = 0; g <= k; ++g) {
            const auto projected = truncate_state(chi, plan_at_cutoff(inst, g), basis, false);
            const double expected = to_double(truncation_tail_chi(inst, g));
            CHECK(trace_norm_distance_sq(projected, chi) ==
                  doctest::Approx(expected).epsilon(1e-12).scale(1.0));
        }
    }
}

TEST_CASE("exact tail identity against the brute-force Frobenius mass") {
    for (const auto& [n, k] : std::vector<std::pair<int, int>>{{6, 2}, {8, 3}, {6, 3}, {4, 2}}) {
        const auto inst = make_instance(n, k);
        const BigInt ones = oracles::brute_force_disjoint_pairs(n, k);
        const auto system = closed_form_spectrum(inst);
        Rational kept = 0;
        for (int g = 0; g <= k; ++g) {
            const auto& space = system.spaces[static_cast<std::size_t>(g)];
            kept += Rational(space.dimension) * space.chi_eigenvalue * space.chi_eigenvalue;
            CHECK((Rational(ones) - kept) / Rational(ones) == truncation_tail_chi(inst, g));
        }
    }
}

TEST_CASE("truncate_state rejects mismatched inputs") {
    const auto inst = make_instance(6, 2);
    const auto basis = orthonormal_eigenbasis(inst);
    const auto chi = build_chi_matrix(inst, true);

    const auto other = make_instance(8, 3);
    CHECK_THROWS_AS(truncate_state(chi, plan_at_cutoff(other, 1), basis, true),
                    std::invalid_argument);

    auto incomplete = closed_form_spectrum(inst);
    CHECK_THROWS_AS(truncate_state(chi, plan_at_cutoff(inst, 1), incomplete, true),
                    std::invalid_argument);
}

TEST_CASE("distance and fidelity identity") {
    const auto inst = make_instance(6, 2);
    const auto basis = orthonormal_eigenbasis(inst);
    const auto chi = build_chi_matrix(inst, true);

    CHECK(trace_norm_distance_sq(chi, chi) == 0.0);

    const auto renormalized = truncate_state(chi, plan_at_cutoff(inst, 1), basis, true);
    const double expected = 2.0 - 2.0 * std::sqrt(0.9);
    CHECK(trace_norm_distance_sq(renormalized, chi) == doctest::Approx(expected).epsilon(1e-12));

    StateMatrix rectangular{inst, Matrix(3, 4), true};
    CHECK_THROWS_AS(trace_norm_distance_sq(chi, rectangular), std::invalid_argument);

    const auto self = verify_fidelity_identity(chi, chi);
    CHECK(self.fidelity == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(self.dist_sq == 0.0);
    CHECK(self.identity_residual <= 1e-14);

    for (const auto& [n, k] : std::vector<std::pair<int, int>>{{6, 2}, {8, 3}}) {
        const auto wide = make_instance(n, k);
        const auto wide_basis = orthonormal_eigenbasis(wide);
        const auto wide_chi = build_chi_matrix(wide, true);
        for (int g = 0; g <= k; ++g) {
            const auto psi = truncate_state(wide_chi, plan_at_cutoff(wide, g), wide_basis, true);
            const auto report = verify_fidelity_identity(psi, wide_chi);
            CHECK(report.identity_residual <= 1e-12);
            const double predicted = std::sqrt(to_double(1 - truncation_tail_chi(wide, g)));
            CHECK(report.fidelity == doctest::Approx(predicted).epsilon(1e-9));
        }
    }

    const auto raw = truncate_state(chi, plan_at_cutoff(inst, 1), basis, false);
    CHECK_THROWS_AS(verify_fidelity_identity(raw, chi), std::invalid_argument);
}
