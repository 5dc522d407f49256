#include "fdci/black_scholes.hpp"

#include <algorithm>
#include <cmath>

#include "fdci/error.hpp"
#include "fdci/specfun.hpp"

namespace fdci {

void BlackScholesModel::validate() const {
    if (N < 3) throw DomainError("BlackScholesModel: need N >= 3");
    if (M < 1) throw DomainError("BlackScholesModel: need M >= 1");
    if (!(T > 0.0) || !(E > 0.0) || !(s_max > 0.0) || !(sigma > 0.0) || !(r > 0.0)) {
        throw DomainError("BlackScholesModel: T, E, S_max, sigma and r must be positive");
    }
}

double bs_diag(const BlackScholesModel& mdl, std::size_t n) {
    const double x = static_cast<double>(n);
    return 1.0 + mdl.beta() + mdl.alpha() * x * x;
}

double bs_upper(const BlackScholesModel& mdl, std::size_t n) {
    const double x = static_cast<double>(n) - 1.0;
    return -0.5 * (mdl.beta() * x + mdl.alpha() * x * x);
}

double bs_lower(const BlackScholesModel& mdl, std::size_t n) {
    const double x = static_cast<double>(n) + 1.0;
    return 0.5 * (mdl.beta() * x - mdl.alpha() * x * x);
}

BandedMatrix bs_assemble(const BlackScholesModel& mdl) {
    mdl.validate();
    const std::size_t k = mdl.N - 1;
    BandedMatrix a(k, 1, 1);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t n = i + 1;
        a.at(i, i) = bs_diag(mdl, n);
        if (i > 0) a.at(i, i - 1) = bs_lower(mdl, n - 1);
        if (i + 1 < k) a.at(i, i + 1) = bs_upper(mdl, n + 1);
    }
    return a;
}

std::vector<double> bs_nodes(const BlackScholesModel& mdl) {
    std::vector<double> s(mdl.N - 1);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = static_cast<double>(i + 1) * mdl.ds();
    return s;
}

std::vector<double> bs_payoff(const BlackScholesModel& mdl) {
    std::vector<double> v = bs_nodes(mdl);
    for (double& x : v) x = std::max(x - mdl.E, 0.0);
    return v;
}

double bs_upper_boundary(const BlackScholesModel& mdl, double tau) {
    return mdl.s_max - mdl.E * std::exp(-mdl.r * tau);
}

std::vector<double> bs_rhs(const BlackScholesModel& mdl, std::span<const double> v_m,
                           std::size_t m) {
    if (v_m.size() != mdl.N - 1) throw DimensionError("bs_rhs: v length != N - 1");
    std::vector<double> b(v_m.begin(), v_m.end());
    const double tau = static_cast<double>(m + 1) * mdl.dt();
    // v_0 = 0 at every step, so only the upper boundary contributes.
    b.back() -= bs_upper(mdl, mdl.N) * bs_upper_boundary(mdl, tau);
    return b;
}

std::vector<double> bs_step(const BlackScholesModel& mdl, const BandedMatrix& a,
                            std::span<const double> v_m, std::size_t m) {
    return thomas_solve(a, bs_rhs(mdl, v_m, m));
}

BsRun bs_run(const BlackScholesModel& mdl, std::size_t steps) {
    if (steps > mdl.M) throw DomainError("bs_run: steps exceeds M");
    const BandedMatrix a = bs_assemble(mdl);
    BsRun run{bs_payoff(mdl), {}, steps};
    for (std::size_t m = 0; m < steps; ++m) {
        run.last_rhs = bs_rhs(mdl, run.v, m);
        run.v = thomas_solve(a, run.last_rhs);
    }
    return run;
}

RegressionProblem bs_regression(const BlackScholesModel& mdl, const BsRun& run) {
    if (run.steps == 0) throw DomainError("bs_regression: run has no steps");
    return {bs_assemble(mdl), run.last_rhs};
}

double bs_exact(const BlackScholesModel& mdl, double S, double t) {
    if (S < 0.0 || t < 0.0 || t > mdl.T) throw DomainError("bs_exact: need S >= 0, 0 <= t <= T");
    const double tau = mdl.T - t;
    if (S == 0.0) return 0.0;
    if (tau == 0.0) return std::max(S - mdl.E, 0.0);
    const double sd = mdl.sigma * std::sqrt(tau);
    const double d1 = (std::log(S / mdl.E) + (mdl.r + 0.5 * mdl.sigma * mdl.sigma) * tau) / sd;
    const double d2 = d1 - sd;
    return S * std_normal_cdf(d1) - mdl.E * std::exp(-mdl.r * tau) * std_normal_cdf(d2);
}

std::vector<double> bs_relative_error_proxy(const PosteriorBand& band, ProxyMode mode) {
    std::vector<double> out(band.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double d =
            mode == ProxyMode::Mean ? band.mean[i] : band.lower[i] + band.upper[i];
        out[i] = band.width[i] / (d + 1.0);
    }
    return out;
}

}  // namespace fdci
