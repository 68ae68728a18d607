#pragma once

#include "qsampler/matrix.hpp"

#include <vector>

namespace qsampler {

struct JacobiOptions {
    int max_sweeps = 100;
    /// Optional early-exit threshold on the off-diagonal L1 mass, relative to
    /// max|a_ij|. 0 (default) runs until the off-diagonal is exactly zero,
    /// which the below-significance flush guarantees terminates.
    double tolerance = 0.0;
};

struct JacobiResult {
    std::vector<double> eigenvalues; ///< ascending
    Matrix eigenvectors;             ///< column j pairs with eigenvalues[j]
    int sweeps = 0;
};

/// Cyclic Jacobi plane-rotation eigensolver for real symmetric matrices.
/// Sweeps the strict upper triangle row by row, annihilating each pivot with
/// a Givens rotation; pivots that fall below the floating-point significance
/// of their diagonal entries are flushed to exact zero, so the sweep loop
/// terminates with a truly diagonal matrix.
///
/// @throws std::invalid_argument for non-square or non-symmetric input
/// @throws std::runtime_error if max_sweeps is exhausted
JacobiResult jacobi_eigendecomposition(Matrix a, const JacobiOptions& options = {});

} // namespace qsampler
