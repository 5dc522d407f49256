#include "fdci/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fdci/error.hpp"

namespace fdci {

namespace {

void require_size(std::size_t expected, std::size_t got, const char* what) {
    if (expected != got) {
        throw DimensionError(std::string(what) + ": expected length " +
                             std::to_string(expected) + ", got " +
                             std::to_string(got));
    }
}

constexpr double kPivotTolerance = 1e-14;
constexpr double kSymmetryTolerance = 1e-12;

}  // namespace

BandedMatrix::BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku)
    : n_(n), kl_(kl), ku_(ku) {
    if (n == 0) {
        throw DimensionError("BandedMatrix: dimension must be at least 1");
    }
    if (kl >= n || ku >= n) {
        throw DimensionError("BandedMatrix: bandwidth (" + std::to_string(kl) + ", " +
                             std::to_string(ku) + ") too large for n = " +
                             std::to_string(n));
    }
    bands_.assign((kl + ku + 1) * n, 0.0);
}

BandedMatrix BandedMatrix::identity(std::size_t n) {
    BandedMatrix a(n, 0, 0);
    std::fill(a.bands_.begin(), a.bands_.end(), 1.0);
    return a;
}

BandedMatrix BandedMatrix::diagonal(std::span<const double> d) {
    BandedMatrix a(d.size(), 0, 0);
    std::copy(d.begin(), d.end(), a.bands_.begin());
    return a;
}

BandedMatrix BandedMatrix::tridiagonal(std::span<const double> lower,
                                       std::span<const double> diag,
                                       std::span<const double> upper) {
    const std::size_t n = diag.size();
    if (n == 0) throw DimensionError("tridiagonal: empty diagonal");
    require_size(n - 1, lower.size(), "tridiagonal lower");
    require_size(n - 1, upper.size(), "tridiagonal upper");
    const std::size_t k = n > 1 ? 1 : 0;
    BandedMatrix a(n, k, k);
    for (std::size_t i = 0; i < n; ++i) a.at(i, i) = diag[i];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        a.at(i + 1, i) = lower[i];
        a.at(i, i + 1) = upper[i];
    }
    return a;
}

double& BandedMatrix::at(std::size_t i, std::size_t j) {
    if (!in_band(i, j)) {
        throw DimensionError("BandedMatrix::at(" + std::to_string(i) + ", " +
                             std::to_string(j) + ") is outside the band");
    }
    return bands_[(ku_ + i - j) * n_ + j];
}

BandedMatrix& BandedMatrix::scale(double factor) noexcept {
    for (double& v : bands_) v *= factor;
    return *this;
}

BandedMatrix& BandedMatrix::scale_row(std::size_t i, double factor) {
    if (i >= n_) throw DimensionError("scale_row: row out of range");
    const std::size_t j0 = i > kl_ ? i - kl_ : 0;
    const std::size_t j1 = std::min(n_ - 1, i + ku_);
    for (std::size_t j = j0; j <= j1; ++j) at(i, j) *= factor;
    return *this;
}

BandedCholeskyFactor::BandedCholeskyFactor(std::size_t n, std::size_t kl)
    : n_(n), kl_(kl), bands_((kl + 1) * n, 0.0) {
    if (n == 0) throw DimensionError("BandedCholeskyFactor: dimension must be at least 1");
}

double& BandedCholeskyFactor::at(std::size_t i, std::size_t j) {
    if (!(j <= i && i <= j + kl_ && i < n_)) {
        throw DimensionError("BandedCholeskyFactor::at outside the lower band");
    }
    return bands_[(i - j) * n_ + j];
}

std::vector<double> band_matvec(const BandedMatrix& a, std::span<const double> v) {
    const std::size_t n = a.n();
    require_size(n, v.size(), "band_matvec");
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j0 = i > a.kl() ? i - a.kl() : 0;
        const std::size_t j1 = std::min(n - 1, i + a.ku());
        double acc = 0.0;
        for (std::size_t j = j0; j <= j1; ++j) acc += a(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

std::vector<double> thomas_solve(const BandedMatrix& a, std::span<const double> b) {
    const std::size_t n = a.n();
    if (a.kl() > 1 || a.ku() > 1) {
        throw DimensionError("thomas_solve: matrix is not tridiagonal");
    }
    require_size(n, b.size(), "thomas_solve");

    // Forward sweep: c holds the modified super-diagonal, x the modified rhs.
    std::vector<double> c(n, 0.0);
    std::vector<double> x(b.begin(), b.end());
    for (std::size_t i = 0; i < n; ++i) {
        const double lower = i > 0 ? a(i, i - 1) : 0.0;
        const double upper = i + 1 < n ? a(i, i + 1) : 0.0;
        const double row_scale =
            std::max({std::abs(lower), std::abs(a(i, i)), std::abs(upper)});
        const double pivot = a(i, i) - (i > 0 ? lower * c[i - 1] : 0.0);
        if (!(std::abs(pivot) >= kPivotTolerance * row_scale) || row_scale == 0.0) {
            throw SingularMatrixError(
                i, "thomas_solve: zero pivot at index " + std::to_string(i));
        }
        c[i] = upper / pivot;
        x[i] = (x[i] - (i > 0 ? lower * x[i - 1] : 0.0)) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
    return x;
}

BandedMatrix normal_equations(const BandedMatrix& x) {
    const std::size_t n = x.n();
    const std::size_t k = std::min(n - 1, x.kl() + x.ku());
    BandedMatrix s(n, k, k);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j <= std::min(n - 1, i + k); ++j) {
            // Rows r with both X(r, i) and X(r, j) inside the band.
            const std::size_t r0 = j > x.ku() ? j - x.ku() : 0;
            const std::size_t r1 = std::min(n - 1, i + x.kl());
            double acc = 0.0;
            for (std::size_t r = r0; r <= r1; ++r) acc += x(r, i) * x(r, j);
            s.at(i, j) = acc;
            s.at(j, i) = acc;
        }
    }
    return s;
}

BandedCholeskyFactor banded_cholesky(const BandedMatrix& s) {
    const std::size_t n = s.n();
    const std::size_t k = std::max(s.kl(), s.ku());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j <= std::min(n - 1, i + k); ++j) {
            const double upper = s(i, j);
            const double lower = s(j, i);
            const double scale = std::max({1.0, std::abs(upper), std::abs(lower)});
            if (std::abs(upper - lower) > kSymmetryTolerance * scale) {
                throw DomainError("banded_cholesky: matrix is not symmetric at (" +
                                  std::to_string(i) + ", " + std::to_string(j) + ")");
            }
        }
    }

    BandedCholeskyFactor l(n, k);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t p0 = j > k ? j - k : 0;
        double d = s(j, j);
        for (std::size_t p = p0; p < j; ++p) d -= l(j, p) * l(j, p);
        if (!(d > 0.0) || d <= kPivotTolerance * std::abs(s(j, j))) {
            throw NotPositiveDefiniteError(
                j, "banded_cholesky: non-positive pivot at index " + std::to_string(j));
        }
        const double ljj = std::sqrt(d);
        l.at(j, j) = ljj;
        for (std::size_t i = j + 1; i <= std::min(n - 1, j + k); ++i) {
            double v = s(i, j);
            const std::size_t q0 = i > k ? i - k : 0;
            for (std::size_t p = std::max(p0, q0); p < j; ++p) v -= l(i, p) * l(j, p);
            l.at(i, j) = v / ljj;
        }
    }
    return l;
}

BandedCholeskyFactor normal_equations_factor(const BandedMatrix& x) {
    const std::size_t n = x.n();
    const std::size_t kl = x.kl();
    const std::size_t w = kl + x.ku();  // upper bandwidth of R
    // Row i holds columns i - kl .. i + w at offsets 0 .. kl + w.
    const std::size_t width = kl + w + 1;
    std::vector<double> rows(n * width, 0.0);
    auto cell = [&](std::size_t i, std::size_t c) -> double& { return rows[i * width + c + kl - i]; };
    std::vector<double> col_scale(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c0 = i > kl ? i - kl : 0;
        const std::size_t c1 = std::min(n - 1, i + x.ku());
        for (std::size_t c = c0; c <= c1; ++c) {
            cell(i, c) = x(i, c);
            col_scale[c] = std::max(col_scale[c], std::abs(x(i, c)));
        }
    }

    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t last_col = std::min(n - 1, j + w);
        for (std::size_t i = j + 1; i <= std::min(n - 1, j + kl); ++i) {
            const double b = cell(i, j);
            if (b == 0.0) continue;
            const double a = cell(j, j);
            const double r = std::hypot(a, b);
            const double c = a / r, s = b / r;
            for (std::size_t col = j; col <= last_col; ++col) {
                const double top = cell(j, col);
                const double bot = col <= i + w ? cell(i, col) : 0.0;
                cell(j, col) = c * top + s * bot;
                if (col <= i + w) cell(i, col) = -s * top + c * bot;
            }
            cell(i, j) = 0.0;
        }
    }

    BandedCholeskyFactor l(n, w);
    for (std::size_t j = 0; j < n; ++j) {
        const double rjj = cell(j, j);
        if (!(std::abs(rjj) > kPivotTolerance * col_scale[j])) {
            throw NotPositiveDefiniteError(
                j, "normal_equations_factor: singular matrix at index " + std::to_string(j));
        }
        const double sign = rjj < 0.0 ? -1.0 : 1.0;
        for (std::size_t col = j; col <= std::min(n - 1, j + w); ++col) {
            l.at(col, j) = sign * cell(j, col);
        }
    }
    return l;
}

void solve_lower_banded_inplace(const BandedCholeskyFactor& l, std::span<double> x) {
    const std::size_t n = l.n();
    require_size(n, x.size(), "solve_lower_banded");
    const std::size_t k = l.kl();
    for (std::size_t i = 0; i < n; ++i) {
        double v = x[i];
        const std::size_t p0 = i > k ? i - k : 0;
        for (std::size_t p = p0; p < i; ++p) v -= l(i, p) * x[p];
        x[i] = v / l(i, i);
    }
}

void solve_upper_banded_inplace(const BandedCholeskyFactor& l, std::span<double> x) {
    const std::size_t n = l.n();
    require_size(n, x.size(), "solve_upper_banded");
    const std::size_t k = std::min(l.kl(), n - 1);
    const auto diag = l.diagonal_band(0);
    for (std::size_t i = n; i-- > 0;) {
        double v = x[i];
        const std::size_t reach = std::min(k, n - 1 - i);
        for (std::size_t d = 1; d <= reach; ++d) v -= l.diagonal_band(d)[i] * x[i + d];
        x[i] = v / diag[i];
    }
}

std::vector<double> solve_lower_banded(const BandedCholeskyFactor& l,
                                       std::span<const double> b) {
    std::vector<double> x(b.begin(), b.end());
    solve_lower_banded_inplace(l, x);
    return x;
}

std::vector<double> solve_upper_banded(const BandedCholeskyFactor& l,
                                       std::span<const double> b) {
    std::vector<double> x(b.begin(), b.end());
    solve_upper_banded_inplace(l, x);
    return x;
}

std::vector<double> cholesky_solve(const BandedCholeskyFactor& l,
                                   std::span<const double> b) {
    std::vector<double> x(b.begin(), b.end());
    solve_lower_banded_inplace(l, x);
    solve_upper_banded_inplace(l, x);
    return x;
}

}  // namespace fdci
