#include "qsampler/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qsampler {

namespace {

/// Sum of |a_pq| over the strict upper triangle; exact zero means done.
double offdiagonal_l1(const Matrix& a) {
    double acc = 0.0;
    for (std::size_t p = 0; p + 1 < a.rows(); ++p)
        for (std::size_t q = p + 1; q < a.cols(); ++q)
            acc += std::abs(a(p, q));
    return acc;
}

} // namespace

JacobiResult jacobi_eigendecomposition(Matrix a, const JacobiOptions& options) {
    if (a.rows() != a.cols()) throw std::invalid_argument("jacobi: matrix must be square");
    const std::size_t n = a.rows();

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            scale = std::max(scale, std::abs(a(i, j)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(a(i, j) - a(j, i)) > 1e-12 * std::max(1.0, scale)) {
                throw std::invalid_argument("jacobi: matrix must be symmetric");
            }
        }
    }

    Matrix v = Matrix::identity(n);
    int sweep = 1;
    for (; sweep <= options.max_sweeps; ++sweep) {
        const double off = offdiagonal_l1(a);
        if (off == 0.0) break;
        if (options.tolerance > 0.0 && off <= options.tolerance * std::max(scale, 1e-300)) break;

        // Early sweeps rotate only pivots above a shrinking threshold;
        // later sweeps rotate everything still representable.
        const double threshold =
            (sweep < 4) ? 0.2 * off / (static_cast<double>(n) * static_cast<double>(n)) : 0.0;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                const double g = 100.0 * std::abs(apq);
                // Pivots below the significance of both diagonal entries are
                // dead weight: flush them to exact zero.
                if (sweep > 4 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
                    std::abs(a(q, q)) + g == std::abs(a(q, q))) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                if (std::abs(apq) <= threshold) continue;

                const double h = a(q, q) - a(p, p);
                double t;
                if (std::abs(h) + g == std::abs(h)) {
                    t = apq / h;
                } else {
                    const double theta = 0.5 * h / apq;
                    t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                const double shift = t * apq;

                a(p, p) -= shift;
                a(q, q) += shift;
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    if (j == p || j == q) continue;
                    const double ajp = a(j, p);
                    const double ajq = a(j, q);
                    a(j, p) = a(p, j) = ajp - s * (ajq + tau * ajp);
                    a(j, q) = a(q, j) = ajq + s * (ajp - tau * ajq);
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const double vjp = v(j, p);
                    const double vjq = v(j, q);
                    v(j, p) = vjp - s * (vjq + tau * vjp);
                    v(j, q) = vjq + s * (vjp - tau * vjq);
                }
            }
        }
    }
    if (sweep > options.max_sweeps && offdiagonal_l1(a) != 0.0 &&
        !(options.tolerance > 0.0 &&
          offdiagonal_l1(a) <= options.tolerance * std::max(scale, 1e-300))) {
        throw std::runtime_error("jacobi: no convergence after sweep cap");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

    JacobiResult result;
    result.eigenvalues.resize(n);
    result.eigenvectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        result.eigenvalues[j] = a(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) result.eigenvectors(i, j) = v(i, order[j]);
    }
    result.sweeps = sweep - 1;
    return result;
}

} // namespace qsampler
