#include "fdci/dense.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "fdci/error.hpp"

namespace fdci::dense {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
    if (rows > kMaxDim || cols > kMaxDim) {
        throw DimensionError("dense::Matrix limited to " + std::to_string(kMaxDim) +
                             " rows/cols");
    }
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix from_banded(const BandedMatrix& a) {
    Matrix m(a.n(), a.n());
    for (std::size_t i = 0; i < a.n(); ++i)
        for (std::size_t j = 0; j < a.n(); ++j) m(i, j) = a(i, j);
    return m;
}

Matrix from_factor(const BandedCholeskyFactor& l) {
    Matrix m(l.n(), l.n());
    for (std::size_t i = 0; i < l.n(); ++i)
        for (std::size_t j = 0; j <= i; ++j) m(i, j) = l(i, j);
    return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("dense::multiply: shape mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    return c;
}

std::vector<double> multiply(const Matrix& a, std::span<const double> v) {
    if (a.cols() != v.size()) throw DimensionError("dense::multiply: shape mismatch");
    std::vector<double> out(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
    return out;
}

std::vector<double> solve(Matrix a, std::span<const double> b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw DimensionError("dense::solve: shape mismatch");
    std::vector<double> x(b.begin(), b.end());
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (a(piv, k) == 0.0) throw SingularMatrixError(k, "dense::solve: singular matrix");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(x[k], x[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            x[i] -= f * x[k];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        double v = x[i];
        for (std::size_t j = i + 1; j < n; ++j) v -= a(i, j) * x[j];
        x[i] = v / a(i, i);
    }
    return x;
}

Matrix cholesky(const Matrix& s) {
    const std::size_t n = s.rows();
    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = s(j, j);
        for (std::size_t p = 0; p < j; ++p) d -= l(j, p) * l(j, p);
        if (!(d > 0.0)) throw NotPositiveDefiniteError(j, "dense::cholesky: not positive definite");
        l(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = s(i, j);
            for (std::size_t p = 0; p < j; ++p) v -= l(i, p) * l(j, p);
            l(i, j) = v / l(j, j);
        }
    }
    return l;
}

std::vector<double> solve_lower(const Matrix& l, std::span<const double> b) {
    const std::size_t n = l.rows();
    std::vector<double> x(b.begin(), b.end());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t p = 0; p < i; ++p) x[i] -= l(i, p) * x[p];
        x[i] /= l(i, i);
    }
    return x;
}

std::vector<double> solve_upper_transposed(const Matrix& l, std::span<const double> b) {
    const std::size_t n = l.rows();
    std::vector<double> x(b.begin(), b.end());
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t p = i + 1; p < n; ++p) x[i] -= l(p, i) * x[p];
        x[i] /= l(i, i);
    }
    return x;
}

double frobenius_norm(const Matrix& a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * a(i, j);
    return std::sqrt(acc);
}

}  // namespace fdci::dense
