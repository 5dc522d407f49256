#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fdci/linalg.hpp"

namespace fdci::dense {

/// Small row-major dense matrix. Serves as a reference for the band
/// solvers; sizes above kMaxDim are rejected.
class Matrix {
public:
    static constexpr std::size_t kMaxDim = 64;

    Matrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    Matrix transpose() const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

Matrix from_banded(const BandedMatrix& a);
Matrix from_factor(const BandedCholeskyFactor& l);
Matrix multiply(const Matrix& a, const Matrix& b);
std::vector<double> multiply(const Matrix& a, std::span<const double> v);

/// Gaussian elimination with partial pivoting.
std::vector<double> solve(Matrix a, std::span<const double> b);
/// Lower Cholesky factor (full storage).
Matrix cholesky(const Matrix& s);
std::vector<double> solve_lower(const Matrix& l, std::span<const double> b);
std::vector<double> solve_upper_transposed(const Matrix& l, std::span<const double> b);

double frobenius_norm(const Matrix& a);

}  // namespace fdci::dense
