#include "fdci/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "fdci/error.hpp"

namespace fdci {

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double complete_elliptic_k(double k) {
    if (!(k >= 0.0 && k < 1.0)) throw DomainError("complete_elliptic_k: need 0 <= k < 1");
    double a = 1.0;
    double b = std::sqrt((1.0 - k) * (1.0 + k));
    while (std::abs(a - b) > 1e-15 * a) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return std::numbers::pi / (2.0 * a);
}

double jacobi_sn(double u, double k) {
    if (!(k >= 0.0 && k <= 1.0)) {
        throw DomainError("jacobi_sn: modulus must lie in [0, 1], got " + std::to_string(k));
    }
    if (k == 0.0) return std::sin(u);
    if (k == 1.0) return std::tanh(u);

    // AGM sequence a_n, c_n starting from (1, k', k).
    constexpr int kMaxSteps = 32;
    std::array<double, kMaxSteps + 1> a{}, c{};
    a[0] = 1.0;
    double b = std::sqrt((1.0 - k) * (1.0 + k));
    c[0] = k;
    int n = 0;
    while (std::abs(c[n]) > 1e-16 * a[n] && n < kMaxSteps) {
        a[n + 1] = 0.5 * (a[n] + b);
        c[n + 1] = 0.5 * (a[n] - b);
        b = std::sqrt(a[n] * b);
        ++n;
    }
    double phi = std::ldexp(a[n] * u, n);
    for (int j = n; j > 0; --j) {
        phi = 0.5 * (phi + std::asin(std::clamp(c[j] / a[j] * std::sin(phi), -1.0, 1.0)));
    }
    return std::sin(phi);
}

double pendulum_exact(double t, const PendulumConstants& c) {
    return 2.0 * std::asin(c.k * jacobi_sn(t - c.t0, c.k));
}

double pendulum_energy(double theta, double theta_dot) {
    return 0.5 - 0.5 * std::cos(theta) + 0.25 * theta_dot * theta_dot;
}

PendulumConstants solve_pendulum_constants(double alpha, double beta, double T,
                                           const PendulumConstants& guess, int* iterations) {
    constexpr int kMaxIter = 100;
    constexpr double kTol = 1e-10;
    PendulumConstants c = guess;
    auto residual = [&](const PendulumConstants& p) {
        return std::array<double, 2>{pendulum_exact(0.0, p) - alpha,
                                     pendulum_exact(T, p) - beta};
    };
    for (int it = 0; it <= kMaxIter; ++it) {
        const auto f = residual(c);
        if (std::max(std::abs(f[0]), std::abs(f[1])) <= kTol) {
            if (iterations) *iterations = it;
            return c;
        }
        if (it == kMaxIter) break;
        // Forward differences; the k step stays inside (0, 1).
        const double ht = 1e-7 * std::max(1.0, std::abs(c.t0));
        const double hk = 1e-7 * std::max(1e-3, c.k);
        const auto ft = residual({c.t0 + ht, c.k});
        const auto fk = residual({c.t0, c.k + hk});
        const double j00 = (ft[0] - f[0]) / ht, j01 = (fk[0] - f[0]) / hk;
        const double j10 = (ft[1] - f[1]) / ht, j11 = (fk[1] - f[1]) / hk;
        const double det = j00 * j11 - j01 * j10;
        if (det == 0.0 || !std::isfinite(det)) break;
        c.t0 -= (j11 * f[0] - j01 * f[1]) / det;
        c.k -= (-j10 * f[0] + j00 * f[1]) / det;
        c.k = std::clamp(c.k, 1e-12, 1.0 - 1e-12);
    }
    throw ConvergenceError("solve_pendulum_constants: no convergence within 100 iterations");
}

}  // namespace fdci
