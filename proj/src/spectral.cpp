#include "qsampler/spectral.hpp"

#include "qsampler/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace qsampler {

namespace {

struct GuardConfig {
    std::size_t matrix_limit;
    std::size_t distribution_limit;
};

GuardConfig load_guards() {
    GuardConfig g{4096, std::size_t{1} << 22};
    if (const char* raw = std::getenv("QSAMPLER_GUARD_N")) {
        const long long v = std::atoll(raw);
        if (v > 0) {
            g.matrix_limit = static_cast<std::size_t>(v);
            g.distribution_limit = std::max(g.distribution_limit,
                                            g.matrix_limit * g.matrix_limit);
        }
    }
    return g;
}

const GuardConfig& guards() {
    static const GuardConfig g = load_guards();
    return g;
}

std::size_t guarded_side(const ProblemInstance& inst) {
    if (inst.subset_count > BigInt(static_cast<unsigned long long>(matrix_guard_limit()))) {
        throw std::length_error("state matrix side C(n,k) = " + inst.subset_count.str() +
                                " exceeds guard " + std::to_string(matrix_guard_limit()) +
                                " (raise QSAMPLER_GUARD_N explicitly to override)");
    }
    return inst.subset_count.convert_to<std::size_t>();
}

std::vector<std::vector<int>> all_subsets(const ProblemInstance& inst, std::size_t side) {
    std::vector<std::vector<int>> subsets;
    subsets.reserve(side);
    for (std::size_t r = 0; r < side; ++r) {
        subsets.push_back(unrank_subset(BigInt(static_cast<unsigned long long>(r)), inst.n, inst.k));
    }
    return subsets;
}

} // namespace

std::size_t matrix_guard_limit() { return guards().matrix_limit; }
std::size_t distribution_guard_limit() { return guards().distribution_limit; }

StateMatrix build_chi_matrix(const ProblemInstance& inst, bool normalized) {
    const std::size_t side = guarded_side(inst);
    if (normalized && inst.disjoint_pair_count == 0) {
        throw std::domain_error("build_chi_matrix: 2k > n leaves no disjoint pairs; "
                                "the zero state cannot be normalized");
    }
    const double value =
        normalized ? 1.0 / std::sqrt(inst.disjoint_pair_count.convert_to<double>()) : 1.0;

    const auto subsets = all_subsets(inst, side);
    StateMatrix state{inst, Matrix(side, side, 0.0), normalized};
    for (std::size_t i = 0; i < side; ++i) {
        for (std::size_t j = i; j < side; ++j) {
            if (disjoint(subsets[i], subsets[j])) {
                state.entries(i, j) = value;
                state.entries(j, i) = value;
            }
        }
    }
    return state;
}

StateMatrix build_b_matrix(const ProblemInstance& inst) {
    const std::size_t side = guarded_side(inst);
    const auto subsets = all_subsets(inst, side);
    StateMatrix state{inst, Matrix(side, side, -1.0), false};
    for (std::size_t i = 0; i < side; ++i) {
        for (std::size_t j = i; j < side; ++j) {
            if (disjoint(subsets[i], subsets[j])) {
                state.entries(i, j) = 1.0;
                state.entries(j, i) = 1.0;
            }
        }
    }
    return state;
}

BigInt b_eigenvalue_unnormalized(const ProblemInstance& inst, int space_index) {
    if (space_index == 0) {
        return 2 * binomial(inst.n - inst.k, inst.k) - inst.subset_count;
    }
    const BigInt magnitude = 2 * binomial(inst.n - inst.k - space_index, inst.k - space_index);
    return (space_index % 2 == 0) ? magnitude : -magnitude;
}

EigenSystem closed_form_spectrum(const ProblemInstance& inst) {
    EigenSystem system;
    system.inst = inst;
    if (2 * inst.k > inst.n) {
        // No disjoint pairs: the chi matrix is identically zero.
        system.degenerate = true;
        system.spaces.push_back(Eigenspace{0, inst.subset_count, Rational(0), Rational(0)});
        return system;
    }
    for (int i = 0; i <= inst.k; ++i) {
        Eigenspace space;
        space.index = i;
        space.dimension = (i == 0) ? BigInt(1) : binomial(inst.n, i) - binomial(inst.n, i - 1);
        if (i == 0) {
            space.chi_eigenvalue = Rational(binomial(inst.n - inst.k, inst.k));
        } else {
            BigInt magnitude = binomial(inst.n - inst.k - i, inst.k - i);
            space.chi_eigenvalue = Rational((i % 2 == 0) ? magnitude : -magnitude);
        }
        space.b_eigenvalue = Rational(b_eigenvalue_unnormalized(inst, i), inst.subset_count);
        system.spaces.push_back(std::move(space));
    }
    return system;
}

std::vector<int> lovasz_eigenvector(const ProblemInstance& inst, int space_index,
                                    std::span<const int> paired_elements) {
    if (space_index < 1 || space_index > inst.k) {
        throw std::invalid_argument("lovasz_eigenvector: eigenspace index must be in [1,k]");
    }
    if (paired_elements.size() != static_cast<std::size_t>(2 * space_index)) {
        throw std::invalid_argument("lovasz_eigenvector: expected 2i index elements");
    }
    std::vector<char> seen(static_cast<std::size_t>(inst.n), 0);
    for (int x : paired_elements) {
        if (x < 0 || x >= inst.n || seen[static_cast<std::size_t>(x)]) {
            throw std::invalid_argument("lovasz_eigenvector: index elements must be distinct in [0,n)");
        }
        seen[static_cast<std::size_t>(x)] = 1;
    }

    const std::size_t side = guarded_side(inst);
    const auto subsets = all_subsets(inst, side);
    std::vector<char> member(static_cast<std::size_t>(inst.n), 0);
    std::vector<int> entries(side, 0);
    for (std::size_t s = 0; s < side; ++s) {
        for (int e : subsets[s]) member[static_cast<std::size_t>(e)] = 1;
        int sign = 1;
        bool zero = false;
        for (int pair = 0; pair < space_index; ++pair) {
            const bool has_first = member[static_cast<std::size_t>(paired_elements[2 * pair])];
            const bool has_second = member[static_cast<std::size_t>(paired_elements[2 * pair + 1])];
            if (has_first == has_second) { zero = true; break; }
            if (has_second) sign = -sign;
        }
        entries[s] = zero ? 0 : sign;
        for (int e : subsets[s]) member[static_cast<std::size_t>(e)] = 0;
    }
    return entries;
}

namespace {

void enumerate_pairings(std::vector<int>& remaining, std::vector<int>& current,
                        std::vector<std::vector<int>>& out) {
    if (remaining.empty()) {
        out.push_back(current);
        return;
    }
    const int first = remaining.front();
    for (std::size_t pick = 1; pick < remaining.size(); ++pick) {
        const int second = remaining[pick];
        std::vector<int> rest;
        rest.reserve(remaining.size() - 2);
        for (std::size_t t = 1; t < remaining.size(); ++t) {
            if (t != pick) rest.push_back(remaining[t]);
        }
        current.push_back(first);
        current.push_back(second);
        enumerate_pairings(rest, current, out);
        current.pop_back();
        current.pop_back();
    }
}

void enumerate_combinations(int n, int want, int start, std::vector<int>& chosen,
                            std::vector<std::vector<int>>& out) {
    if (want == 0) {
        std::vector<int> remaining = chosen;
        std::vector<int> current;
        enumerate_pairings(remaining, current, out);
        return;
    }
    for (int e = start; e <= n - want; ++e) {
        chosen.push_back(e);
        enumerate_combinations(n, want - 1, e + 1, chosen, out);
        chosen.pop_back();
    }
}

} // namespace

std::vector<std::vector<int>> eigenvector_index_tuples(int n, int space_index) {
    if (space_index < 1 || 2 * space_index > n) {
        throw std::invalid_argument("eigenvector_index_tuples: need 1 <= i and 2i <= n");
    }
    std::vector<std::vector<int>> out;
    std::vector<int> chosen;
    enumerate_combinations(n, 2 * space_index, 0, chosen, out);
    return out;
}

EigenSystem orthonormal_eigenbasis(const ProblemInstance& inst) {
    EigenSystem system = closed_form_spectrum(inst);
    const std::size_t side = guarded_side(inst);

    if (system.degenerate) {
        system.basis = Matrix::identity(side);
        system.group_offset = {0, side};
        return system;
    }

    Matrix basis(side, side, 0.0);
    system.group_offset.assign(1, 0);

    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(side));
    for (std::size_t r = 0; r < side; ++r) basis(r, 0) = inv_sqrt_n;
    std::size_t filled = 1;
    system.group_offset.push_back(filled);

    for (int i = 1; i <= inst.k; ++i) {
        const std::size_t want = system.spaces[static_cast<std::size_t>(i)]
                                     .dimension.convert_to<std::size_t>();
        const std::size_t group_start = filled;
        for (const auto& tuple : eigenvector_index_tuples(inst.n, i)) {
            if (filled - group_start == want) break;
            const auto raw = lovasz_eigenvector(inst, i, tuple);
            std::vector<double> v(raw.begin(), raw.end());
            double original_norm_sq = 0.0;
            for (double x : v) original_norm_sq += x * x;
            if (original_norm_sq == 0.0) continue;

            // Two Gram-Schmidt passes against this group; other groups are
            // exactly orthogonal already (integer dot products vanish).
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t c = group_start; c < filled; ++c) {
                    double proj = 0.0;
                    for (std::size_t r = 0; r < side; ++r) proj += basis(r, c) * v[r];
                    for (std::size_t r = 0; r < side; ++r) v[r] -= proj * basis(r, c);
                }
            }
            double norm_sq = 0.0;
            for (double x : v) norm_sq += x * x;
            if (norm_sq <= 1e-12 * original_norm_sq) continue; // dependent candidate
            const double inv = 1.0 / std::sqrt(norm_sq);
            for (std::size_t r = 0; r < side; ++r) basis(r, filled) = v[r] * inv;
            ++filled;
        }
        if (filled - group_start != want) {
            throw std::runtime_error("orthonormal_eigenbasis: eigenspace " + std::to_string(i) +
                                     " is rank deficient (generated " +
                                     std::to_string(filled - group_start) + " of " +
                                     std::to_string(want) + " vectors)");
        }
        system.group_offset.push_back(filled);
    }
    if (filled != side) {
        throw std::runtime_error("orthonormal_eigenbasis: dimensions do not fill the space");
    }
    system.basis = std::move(basis);
    return system;
}

std::vector<EigenPair> numeric_eigendecomposition(const StateMatrix& m) {
    const std::size_t side = m.entries.rows();
    if (side != m.entries.cols()) {
        throw std::invalid_argument("numeric_eigendecomposition: matrix must be square");
    }
    if (side > 1024) {
        throw std::invalid_argument("numeric_eigendecomposition: N > 1024 is outside the "
                                    "dense oracle's remit");
    }

    const JacobiResult decomposition = jacobi_eigendecomposition(m.entries);

    const double norm = std::sqrt(frobenius_norm_sq(m.entries));
    const double residual_cap = 1e-9 * std::max(norm, 1e-30);
    std::vector<EigenPair> pairs(side);
    for (std::size_t j = 0; j < side; ++j) {
        pairs[j].value = decomposition.eigenvalues[j];
        pairs[j].vector.resize(side);
        for (std::size_t r = 0; r < side; ++r) {
            pairs[j].vector[r] = decomposition.eigenvectors(r, j);
        }
        const auto mv = m.entries * pairs[j].vector;
        double residual_sq = 0.0;
        for (std::size_t r = 0; r < side; ++r) {
            const double d = mv[r] - pairs[j].value * pairs[j].vector[r];
            residual_sq += d * d;
        }
        if (std::sqrt(residual_sq) > residual_cap) {
            throw std::runtime_error("numeric_eigendecomposition: residual above 1e-9*||M||");
        }
    }
    return pairs;
}

std::vector<double> closed_form_eigenvalue_multiset(const EigenSystem& system,
                                                    bool b_matrix_side, double scale) {
    std::vector<double> values;
    for (const auto& space : system.spaces) {
        const double value =
            to_double(b_matrix_side ? space.b_eigenvalue : space.chi_eigenvalue) * scale;
        const std::size_t count = space.dimension.convert_to<std::size_t>();
        values.insert(values.end(), count, value);
    }
    std::sort(values.begin(), values.end());
    return values;
}

double multiset_residual(std::vector<double> expected, const std::vector<EigenPair>& numeric) {
    if (expected.size() != numeric.size()) {
        return std::numeric_limits<double>::infinity();
    }
    std::sort(expected.begin(), expected.end());
    std::vector<double> observed;
    observed.reserve(numeric.size());
    for (const auto& pair : numeric) observed.push_back(pair.value);
    std::sort(observed.begin(), observed.end());
    double worst = 0.0;
    for (std::size_t j = 0; j < expected.size(); ++j) {
        worst = std::max(worst, std::abs(expected[j] - observed[j]));
    }
    return worst;
}

} // namespace qsampler
