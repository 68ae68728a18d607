#pragma once

#include "qsampler/combinatorics.hpp"
#include "qsampler/matrix.hpp"

#include <optional>
#include <span>
#include <vector>

namespace qsampler {

/// Matrix representation of a bipartite state over pairs of k-subsets:
/// entry (i,j) is the amplitude on |i>|j> with both registers indexed in
/// colex order. `normalized` records unit Frobenius mass (so the matrix
/// holds a unit state vector).
struct StateMatrix {
    ProblemInstance inst;
    Matrix entries;
    bool normalized = false;
};

/// One of the k+1 common eigenspaces E_i shared by the chi matrix and its
/// +-1 companion B (they differ only by a multiple of the all-ones matrix).
struct Eigenspace {
    int index = 0;          ///< i in 0..k
    BigInt dimension;       ///< d_i = C(n,i) - C(n,i-1), d_0 = 1
    Rational b_eigenvalue;  ///< eigenvalue of B / C(n,k), signed
    Rational chi_eigenvalue;///< eigenvalue of the unnormalized chi matrix, signed
};

struct EigenSystem {
    ProblemInstance inst;
    /// 2k > n: no disjoint pairs, the chi matrix is zero and the closed form
    /// collapses to a single zero eigenspace.
    bool degenerate = false;
    std::vector<Eigenspace> spaces;
    /// Orthonormal basis, columns grouped by eigenspace in index order;
    /// present only when built by orthonormal_eigenbasis.
    std::optional<Matrix> basis;
    /// Column offsets per group (size spaces.size()+1) when basis is present.
    std::vector<std::size_t> group_offset;
};

/// Hard cap on the side length N of materialized matrices, default 4096.
/// Raise explicitly with the QSAMPLER_GUARD_N environment variable.
std::size_t matrix_guard_limit();
/// Cap on dense N*N outcome tables, default 2^22 pair entries (raised along
/// with QSAMPLER_GUARD_N when that exceeds the default).
std::size_t distribution_guard_limit();

/// 0/1 disjointness matrix (the chi state): entry 1 iff the subsets are
/// disjoint, scaled by 1/sqrt(D) when normalized.
/// @throws std::length_error when N exceeds the guard
/// @throws std::domain_error when normalized is requested with D = 0
StateMatrix build_chi_matrix(const ProblemInstance& inst, bool normalized);

/// The +-1 companion matrix B = 2*chi - J.
StateMatrix build_b_matrix(const ProblemInstance& inst);

/// The k+1 closed-form eigenspaces (Kneser-graph spectrum): dimensions
/// C(n,i) - C(n,i-1), chi eigenvalues (-1)^i C(n-k-i, k-i) with
/// C(n-k,k) at i = 0, and B eigenvalues scaled by C(n,k). All exact.
EigenSystem closed_form_spectrum(const ProblemInstance& inst);

/// Unnormalized B eigenvalue on E_i: 2*C(n-k,k) - C(n,k) at i = 0,
/// 2*(-1)^i*C(n-k-i,k-i) for i >= 1.
BigInt b_eigenvalue_unnormalized(const ProblemInstance& inst, int space_index);

/// Lovasz's explicit eigenvector of the Kneser matrix for eigenspace E_i,
/// indexed by 2i distinct elements read as pairs (x1,x2),(x3,x4),...:
/// entry_S = 0 unless S holds exactly one element of every pair, otherwise
/// the product over pairs of -1 when S holds the pair's second element.
/// Entries are exact in {-1,0,+1}.
/// @throws std::invalid_argument for malformed index tuples
std::vector<int> lovasz_eigenvector(const ProblemInstance& inst, int space_index,
                                    std::span<const int> paired_elements);

/// All canonical index tuples for eigenspace E_i in lexicographic order:
/// each pair sorted ascending, pairs ordered by first element. Swapping a
/// pair only flips the vector's sign, so this family already spans E_i.
std::vector<std::vector<int>> eigenvector_index_tuples(int n, int space_index);

/// Closed-form spectrum plus an orthonormal basis: per eigenspace, Lovasz
/// vectors are generated in tuple order and Gram-Schmidt-reduced until the
/// space's dimension is reached (the family is overcomplete). Cross-space
/// orthogonality is automatic. Column 0 is all-ones/sqrt(N).
/// @throws std::runtime_error if a space cannot be filled (generation bug)
EigenSystem orthonormal_eigenbasis(const ProblemInstance& inst);

struct EigenPair {
    double value = 0.0;
    std::vector<double> vector;
};

/// Numeric oracle: cyclic Jacobi eigendecomposition of a symmetric state
/// matrix, residual-checked to ||M v - lambda v|| <= 1e-9 ||M||.
/// Pairs are returned in ascending eigenvalue order.
/// @throws std::invalid_argument non-symmetric input or N > 1024
std::vector<EigenPair> numeric_eigendecomposition(const StateMatrix& m);

/// Closed-form eigenvalues expanded to a multiset with multiplicities d_i,
/// sorted ascending. Selects the chi eigenvalues or, with b_matrix_side,
/// the B/C(n,k) ones; `scale` rescales (e.g. C(n,k) for unnormalized B).
std::vector<double> closed_form_eigenvalue_multiset(const EigenSystem& system,
                                                    bool b_matrix_side, double scale);

/// Largest pairwise gap between a sorted expected multiset and a numeric
/// spectrum, +inf on count mismatch. Signs matter: a flipped eigenvalue
/// shows up as a large residual, not a match.
double multiset_residual(std::vector<double> expected, const std::vector<EigenPair>& numeric);

} // namespace qsampler
