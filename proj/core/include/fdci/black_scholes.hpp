#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fdci/bayes.hpp"
#include "fdci/linalg.hpp"

namespace fdci {

/// European call under Black-Scholes, stepped in time-to-expiry by the fully
/// implicit scheme on S_n = n dS, n = 0..N.
struct BlackScholesModel {
    double T = 0.25;
    double E = 10.0;
    double r = 0.1;
    double sigma = 0.4;
    double s_max = 40.0;
    std::size_t N = 200;
    std::size_t M = 2000;

    double ds() const { return s_max / static_cast<double>(N); }
    double dt() const { return T / static_cast<double>(M); }
    double alpha() const { return sigma * sigma * dt(); }
    double beta() const { return r * dt(); }
    void validate() const;

    static BlackScholesModel canonical() { return {}; }
};

/// Coefficients of v_{n-1}, v_n, v_{n+1} in equation n are l_{n-1}, d_n,
/// u_{n+1}.
double bs_diag(const BlackScholesModel& mdl, std::size_t n);
double bs_upper(const BlackScholesModel& mdl, std::size_t n);
/// (beta (n+1) - alpha (n+1)^2) / 2: the sign of the alpha term follows
/// from the discretization, so that every row sums to 1 + beta.
double bs_lower(const BlackScholesModel& mdl, std::size_t n);

/// (N-1) x (N-1) tridiagonal operator.
BandedMatrix bs_assemble(const BlackScholesModel& mdl);

/// Interior asset prices S_1..S_{N-1}.
std::vector<double> bs_nodes(const BlackScholesModel& mdl);
/// max(S_n - E, 0) at the interior nodes.
std::vector<double> bs_payoff(const BlackScholesModel& mdl);
/// S_max - E exp(-r tau), tau the time to expiry.
double bs_upper_boundary(const BlackScholesModel& mdl, double tau);

/// Right-hand side b^m of A v^{m+1} = b^m.
std::vector<double> bs_rhs(const BlackScholesModel& mdl, std::span<const double> v_m,
                           std::size_t m);
/// Advances v^m to v^{m+1}.
std::vector<double> bs_step(const BlackScholesModel& mdl, const BandedMatrix& a,
                            std::span<const double> v_m, std::size_t m);

struct BsRun {
    std::vector<double> v;         ///< v^steps
    std::vector<double> last_rhs;  ///< b^{steps-1}, empty when steps = 0
    std::size_t steps = 0;
};

BsRun bs_run(const BlackScholesModel& mdl, std::size_t steps);

/// Regression for the last step of a run: X = A, Y = b^{steps-1}.
RegressionProblem bs_regression(const BlackScholesModel& mdl, const BsRun& run);

/// Closed-form call price at calendar time t, 0 <= t <= T.
double bs_exact(const BlackScholesModel& mdl, double S, double t);

enum class ProxyMode { Mean, LimitSum };

/// width / (D + 1) with D the posterior mean or lower + upper.
std::vector<double> bs_relative_error_proxy(const PosteriorBand& band, ProxyMode mode);

}  // namespace fdci
