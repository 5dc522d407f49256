#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fdci {

/// Square matrix with kl sub-diagonals and ku super-diagonals.
///
/// Storage is one dense row per diagonal: element (i, j) lives at
/// bands[(ku + i - j) * n + j], so each diagonal is contiguous in memory.
/// Entries outside the band are identically zero and cannot be written.
class BandedMatrix {
public:
    BandedMatrix() = default;
    BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku);

    static BandedMatrix identity(std::size_t n);
    static BandedMatrix diagonal(std::span<const double> d);
    /// lower[i] is entry (i+1, i), upper[i] is entry (i, i+1).
    static BandedMatrix tridiagonal(std::span<const double> lower,
                                    std::span<const double> diag,
                                    std::span<const double> upper);

    std::size_t n() const noexcept { return n_; }
    std::size_t kl() const noexcept { return kl_; }
    std::size_t ku() const noexcept { return ku_; }

    bool in_band(std::size_t i, std::size_t j) const noexcept {
        return i < n_ && j < n_ && i <= j + kl_ && j <= i + ku_;
    }

    /// Returns zero outside the band.
    double operator()(std::size_t i, std::size_t j) const noexcept {
        return in_band(i, j) ? bands_[(ku_ + i - j) * n_ + j] : 0.0;
    }

    /// Mutable access; throws DimensionError outside the band.
    double& at(std::size_t i, std::size_t j);

    std::span<const double> bands() const noexcept { return bands_; }

    /// Multiplies every stored entry by `factor`.
    BandedMatrix& scale(double factor) noexcept;
    /// Multiplies row i by factor.
    BandedMatrix& scale_row(std::size_t i, double factor);

private:
    std::size_t n_ = 0;
    std::size_t kl_ = 0;
    std::size_t ku_ = 0;
    std::vector<double> bands_;
};

/// Lower-triangular band factor L with S = L * L^T.
///
/// Element (i, j), i >= j, is stored at bands[(i - j) * n + j].
class BandedCholeskyFactor {
public:
    BandedCholeskyFactor(std::size_t n, std::size_t kl);

    std::size_t n() const noexcept { return n_; }
    std::size_t kl() const noexcept { return kl_; }

    double operator()(std::size_t i, std::size_t j) const noexcept {
        return (j <= i && i <= j + kl_ && i < n_) ? bands_[(i - j) * n_ + j] : 0.0;
    }
    double& at(std::size_t i, std::size_t j);

    /// Sub-diagonal d as a contiguous span: entry j is L(j + d, j).
    std::span<const double> diagonal_band(std::size_t d) const noexcept {
        return std::span<const double>(bands_).subspan(d * n_, n_ - d);
    }

private:
    std::size_t n_;
    std::size_t kl_;
    std::vector<double> bands_;
};

std::vector<double> band_matvec(const BandedMatrix& a, std::span<const double> v);

/// Tridiagonal solve without pivoting. Throws SingularMatrixError when a
/// pivot falls below 1e-14 times the scale of its row.
std::vector<double> thomas_solve(const BandedMatrix& a, std::span<const double> b);

/// X^T X with bandwidth kl + ku; symmetric bit-for-bit.
BandedMatrix normal_equations(const BandedMatrix& x);

/// Cholesky factorization of a symmetric positive definite band matrix.
BandedCholeskyFactor banded_cholesky(const BandedMatrix& s);

/// Cholesky factor of X^T X for square X, taken as R^T from a Givens QR of X
/// with R's diagonal made positive. X^T X is never formed, so this survives
/// matrices whose normal equations lose definiteness in rounding.
BandedCholeskyFactor normal_equations_factor(const BandedMatrix& x);

/// Solves L y = b.
std::vector<double> solve_lower_banded(const BandedCholeskyFactor& l,
                                       std::span<const double> b);
/// Solves L^T x = b.
std::vector<double> solve_upper_banded(const BandedCholeskyFactor& l,
                                       std::span<const double> b);

/// In-place variants used on hot paths; x holds b on entry.
void solve_lower_banded_inplace(const BandedCholeskyFactor& l, std::span<double> x);
void solve_upper_banded_inplace(const BandedCholeskyFactor& l, std::span<double> x);

/// Solves S x = b given S = L L^T.
std::vector<double> cholesky_solve(const BandedCholeskyFactor& l,
                                   std::span<const double> b);

}  // namespace fdci
