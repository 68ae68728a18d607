#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qsampler {

/// Dense row-major real matrix. Value semantics; sized for desk-scale
/// state matrices (the construction guards live in spectral.hpp).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, value) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    Matrix transposed() const;
    Matrix& operator*=(double s);
    Matrix& operator-=(const Matrix& other);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, const std::vector<double>& x);

double frobenius_norm_sq(const Matrix& m);
/// Entrywise inner product sum_ij a_ij * b_ij.
double entrywise_dot(const Matrix& a, const Matrix& b);
double max_abs(const Matrix& m);
/// max_ij |(U^T U - I)_ij|.
double orthogonality_defect(const Matrix& u);

/// Row-major dense complex matrix; only what the local-operation surface
/// needs (products, adjoint, unitarity defect).
class ComplexMatrix {
public:
    using value_type = std::complex<double>;

    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols, value_type value = {})
        : rows_(rows), cols_(cols), data_(rows * cols, value) {}

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix from_real(const Matrix& m);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    ComplexMatrix adjoint() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<value_type> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs(const ComplexMatrix& m);
/// max_ij |(U U† - I)_ij|.
double unitarity_defect(const ComplexMatrix& u);

} // namespace qsampler
