#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qsampler/spectral.hpp"
#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace qsampler;

namespace {

int count_entries(const Matrix& m, double value) {
    int count = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) == value) ++count;
    return count;
}

/// Exact integer B*v for eigen-relation checks, built straight from the
/// oracle subset list.
std::vector<long long> b_times(const std::vector<std::vector<int>>& subsets,
                               const std::vector<int>& v) {
    std::vector<long long> out(subsets.size(), 0);
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        long long acc = 0;
        for (std::size_t j = 0; j < subsets.size(); ++j) {
            acc += (oracles::sets_disjoint(subsets[i], subsets[j]) ? 1 : -1) * v[j];
        }
        out[i] = acc;
    }
    return out;
}

} // namespace

TEST_CASE("chi matrix construction") {
    const auto small = build_chi_matrix(make_instance(4, 2), false);
    CHECK(small.entries.rows() == 6);
    CHECK(count_entries(small.entries, 1.0) == 6);
    for (std::size_t i = 0; i < 6; ++i) CHECK(small.entries(i, i) == 0.0);

    const auto empty = build_chi_matrix(make_instance(3, 2), false);
    CHECK(frobenius_norm_sq(empty.entries) == 0.0);
    CHECK_THROWS_AS(build_chi_matrix(make_instance(3, 2), true), std::domain_error);

    const auto normalized = build_chi_matrix(make_instance(6, 2), true);
    CHECK(normalized.normalized);
    CHECK(frobenius_norm_sq(normalized.entries) == doctest::Approx(1.0).epsilon(1e-12));
    const double amplitude = 1.0 / std::sqrt(90.0);
    CHECK(count_entries(normalized.entries, amplitude) == 90);

    CHECK_THROWS_AS(build_chi_matrix(make_instance(30, 5), false), std::length_error);
}

TEST_CASE("B matrix and the 2*chi - J identity") {
    const auto b = build_b_matrix(make_instance(6, 2));
    CHECK(count_entries(b.entries, 1.0) == 90);
    CHECK(count_entries(b.entries, -1.0) == 135);
    for (std::size_t i = 0; i < b.entries.rows(); ++i) CHECK(b.entries(i, i) == -1.0);

    for (const auto& [n, k] : std::vector<std::pair<int, int>>{{4, 2}, {6, 2}, {6, 3}}) {
        const auto inst = make_instance(n, k);
        const auto chi = build_chi_matrix(inst, false);
        const auto signs = build_b_matrix(inst);
        for (std::size_t i = 0; i < chi.entries.rows(); ++i)
            for (std::size_t j = 0; j < chi.entries.cols(); ++j)
                CHECK(signs.entries(i, j) == 2.0 * chi.entries(i, j) - 1.0);
    }
}

TEST_CASE("closed-form spectrum") {
    const auto system = closed_form_spectrum(make_instance(6, 2));
    REQUIRE(system.spaces.size() == 3);
    CHECK(system.spaces[0].dimension == 1);
    CHECK(system.spaces[1].dimension == 5);
    CHECK(system.spaces[2].dimension == 9);
    CHECK(system.spaces[0].chi_eigenvalue == Rational(6));
    CHECK(system.spaces[1].chi_eigenvalue == Rational(-3));
    CHECK(system.spaces[2].chi_eigenvalue == Rational(1));
    CHECK(system.spaces[0].b_eigenvalue == Rational(-1, 5));
    CHECK(system.spaces[1].b_eigenvalue == Rational(-2, 5));
    CHECK(system.spaces[2].b_eigenvalue == Rational(2, 15));

    const auto tight = closed_form_spectrum(make_instance(4, 2));
    REQUIRE(tight.spaces.size() == 3);
    CHECK(tight.spaces[0].dimension == 1);
    CHECK(tight.spaces[1].dimension == 3);
    CHECK(tight.spaces[2].dimension == 2);
    CHECK(tight.spaces[0].chi_eigenvalue == Rational(1));
    CHECK(tight.spaces[1].chi_eigenvalue == Rational(-1));
    CHECK(tight.spaces[2].chi_eigenvalue == Rational(1));
    Rational trace = 0;
    for (const auto& space : tight.spaces) trace += Rational(space.dimension) * space.chi_eigenvalue;
    CHECK(trace == 0);

    const auto degenerate = closed_form_spectrum(make_instance(3, 2));
    CHECK(degenerate.degenerate);
    REQUIRE(degenerate.spaces.size() == 1);
    CHECK(degenerate.spaces[0].dimension == 3);
    CHECK(degenerate.spaces[0].chi_eigenvalue == 0);
}

TEST_CASE("numeric oracle confirms the signed closed form") {
    for (int n = 4; n <= 10; ++n) {
        for (int k : {2, 3}) {
            if (2 * k > n) continue;
            const auto inst = make_instance(n, k);
            const auto system = closed_form_spectrum(inst);

            const auto chi_numeric = numeric_eigendecomposition(build_chi_matrix(inst, false));
            CHECK(multiset_residual(closed_form_eigenvalue_multiset(system, false, 1.0),
                                    chi_numeric) <= 1e-9);

            const auto b_numeric = numeric_eigendecomposition(build_b_matrix(inst));
            const double scale = inst.subset_count.convert_to<double>();
            CHECK(multiset_residual(closed_form_eigenvalue_multiset(system, true, scale),
                                    b_numeric) <= 1e-9);

            // Index order is magnitude order for the chi eigenvalues, which is
            // what makes "keep E_0..E_g" the same as "keep the largest".
            for (std::size_t s = 0; s + 1 < system.spaces.size(); ++s) {
                CHECK(abs(system.spaces[s].chi_eigenvalue) >=
                      abs(system.spaces[s + 1].chi_eigenvalue));
            }
        }
    }
}

TEST_CASE("a flipped eigenvalue sign is caught by the oracle") {
    const auto inst = make_instance(6, 2);
    auto system = closed_form_spectrum(inst);
    system.spaces[1].chi_eigenvalue = -system.spaces[1].chi_eigenvalue;
    const auto numeric = numeric_eigendecomposition(build_chi_matrix(inst, false));
    CHECK(multiset_residual(closed_form_eigenvalue_multiset(system, false, 1.0), numeric) > 1e-3);
}

TEST_CASE("numeric eigendecomposition edge cases") {
    const auto inst = make_instance(6, 2);
    StateMatrix identity{inst, Matrix::identity(15), false};
    for (const auto& pair : numeric_eigendecomposition(identity)) {
        CHECK(pair.value == doctest::Approx(1.0).epsilon(1e-14));
    }

    const auto zero = build_chi_matrix(make_instance(3, 2), false);
    for (const auto& pair : numeric_eigendecomposition(zero)) CHECK(pair.value == 0.0);

    StateMatrix rectangular{inst, Matrix(3, 4), false};
    CHECK_THROWS_AS(numeric_eigendecomposition(rectangular), std::invalid_argument);

    StateMatrix lopsided{inst, Matrix(2, 2), false};
    lopsided.entries(0, 1) = 1.0;
    CHECK_THROWS_AS(numeric_eigendecomposition(lopsided), std::invalid_argument);

    StateMatrix oversized{inst, Matrix(1025, 1025), false};
    CHECK_THROWS_AS(numeric_eigendecomposition(oversized), std::invalid_argument);
}

TEST_CASE("explicit eigenvectors: entries, balance, eigen-relations") {
    const auto inst = make_instance(4, 2);
    const auto subsets = oracles::colex_subsets(4, 2);
    const std::vector<int> tuple{0, 1};
    const auto v = lovasz_eigenvector(inst, 1, tuple);
    const auto contains = [](const std::vector<int>& s, int e) {
        return std::find(s.begin(), s.end(), e) != s.end();
    };
    for (std::size_t s = 0; s < subsets.size(); ++s) {
        const bool first_only = contains(subsets[s], 0) && !contains(subsets[s], 1);
        const bool second_only = contains(subsets[s], 1) && !contains(subsets[s], 0);
        if (first_only) CHECK(v[s] == 1);
        else if (second_only) CHECK(v[s] == -1);
        else CHECK(v[s] == 0);
    }
    const auto bv = b_times(subsets, v);
    for (std::size_t s = 0; s < subsets.size(); ++s) CHECK(bv[s] == -2 * v[s]);

    const auto wide = make_instance(6, 2);
    const auto wide_subsets = oracles::colex_subsets(6, 2);
    const std::vector<int> pairs{0, 1, 2, 3};
    const auto w = lovasz_eigenvector(wide, 2, pairs);
    const auto bw = b_times(wide_subsets, w);
    for (std::size_t s = 0; s < wide_subsets.size(); ++s) CHECK(bw[s] == 2 * w[s]);

    // Every index-1 eigenvector balances against the all-ones direction.
    for (const auto& t : eigenvector_index_tuples(6, 1)) {
        const auto u = lovasz_eigenvector(wide, 1, t);
        long long sum = 0;
        for (int entry : u) sum += entry;
        CHECK(sum == 0);
    }
}

TEST_CASE("malformed eigenvector index tuples are rejected") {
    const auto inst = make_instance(6, 2);
    const std::vector<int> short_tuple{0};
    const std::vector<int> duplicated{0, 0};
    const std::vector<int> outside{0, 6};
    const std::vector<int> fine{0, 1};
    CHECK_THROWS_AS(lovasz_eigenvector(inst, 1, short_tuple), std::invalid_argument);
    CHECK_THROWS_AS(lovasz_eigenvector(inst, 1, duplicated), std::invalid_argument);
    CHECK_THROWS_AS(lovasz_eigenvector(inst, 1, outside), std::invalid_argument);
    CHECK_THROWS_AS(lovasz_eigenvector(inst, 0, fine), std::invalid_argument);
    CHECK_THROWS_AS(lovasz_eigenvector(inst, 3, fine), std::invalid_argument);
}

TEST_CASE("index tuple enumeration is canonical") {
    const auto singles = eigenvector_index_tuples(6, 1);
    CHECK(singles.size() == 15); // C(6,2)
    const auto doubles = eigenvector_index_tuples(6, 2);
    CHECK(doubles.size() == 45); // C(6,4) * 3 pairings
    for (const auto& t : doubles) {
        REQUIRE(t.size() == 4);
        CHECK(t[0] < t[1]);
        CHECK(t[2] < t[3]);
        CHECK(t[0] < t[2]);
    }
}

TEST_CASE("orthonormal eigenbasis diagonalizes both matrices") {
    for (const auto& [n, k] : std::vector<std::pair<int, int>>{{6, 2}, {6, 3}, {8, 3}}) {
        const auto inst = make_instance(n, k);
        const auto system = orthonormal_eigenbasis(inst);
        REQUIRE(system.basis.has_value());
        const Matrix& v = *system.basis;

        REQUIRE(system.group_offset.size() == system.spaces.size() + 1);
        for (std::size_t s = 0; s < system.spaces.size(); ++s) {
            CHECK(system.group_offset[s + 1] - system.group_offset[s] ==
                  system.spaces[s].dimension.convert_to<std::size_t>());
        }

        CHECK(orthogonality_defect(v) <= 1e-10);

        const double uniform = 1.0 / std::sqrt(static_cast<double>(v.rows()));
        for (std::size_t r = 0; r < v.rows(); ++r) CHECK(v(r, 0) == doctest::Approx(uniform));

        for (const bool use_b : {false, true}) {
            const auto state = use_b ? build_b_matrix(inst) : build_chi_matrix(inst, false);
            const Matrix rotated = v.transposed() * state.entries * v;
            double worst_off = 0.0;
            for (std::size_t i = 0; i < rotated.rows(); ++i)
                for (std::size_t j = 0; j < rotated.cols(); ++j)
                    if (i != j) worst_off = std::max(worst_off, std::abs(rotated(i, j)));
            CHECK(worst_off <= 1e-9);

            // Grouped diagonal values sit on the closed-form eigenvalues.
            for (std::size_t s = 0; s < system.spaces.size(); ++s) {
                const double expected =
                    to_double(use_b ? system.spaces[s].b_eigenvalue *
                                          Rational(inst.subset_count)
                                    : system.spaces[s].chi_eigenvalue);
                for (std::size_t c = system.group_offset[s]; c < system.group_offset[s + 1]; ++c) {
                    CHECK(rotated(c, c) == doctest::Approx(expected).epsilon(1e-9));
                }
            }
        }
    }
}

TEST_CASE("degenerate instance gets the identity basis") {
    const auto system = orthonormal_eigenbasis(make_instance(3, 2));
    CHECK(system.degenerate);
    REQUIRE(system.basis.has_value());
    CHECK(orthogonality_defect(*system.basis) == 0.0);
    CHECK(system.group_offset == std::vector<std::size_t>{0, 3});
}
