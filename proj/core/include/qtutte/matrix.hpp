#pragma once

#include <cstddef>
#include <vector>

namespace qtutte {

/// Dense row-major matrix. Desk scale by design: every system this project
/// builds stays below a few hundred rows, so no blocking or sparsity.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_symmetric(double tol = 1e-12) const;

    /// max_i sum_j |a_ij|
    double inf_norm() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

std::vector<double> mat_vec(const Matrix& a, const std::vector<double>& v);
Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);

/// Solves a x = b for symmetric positive definite a by Cholesky factorization.
/// Throws numerical_failure when a pivot collapses (singular or indefinite a).
std::vector<double> cholesky_solve(const Matrix& a, const std::vector<double>& b);

/// Full symmetric eigendecomposition, a = V diag(values) V^T.
struct SymmetricEigen {
    std::vector<double> values; // ascending
    Matrix vectors;             // column j is the eigenvector for values[j]
};

/// Cyclic Jacobi rotations; converges to well below 1e-8 relative accuracy at
/// the dimensions used here. Throws invalid_input when a is not symmetric.
SymmetricEigen jacobi_eigen(const Matrix& a);

} // namespace qtutte
