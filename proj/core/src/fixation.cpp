#include "fdci/fixation.hpp"

#include <cmath>

#include "fdci/error.hpp"

namespace fdci {

namespace {
constexpr double kLower = 249.25;
constexpr double kUpper = 250.75;
constexpr double kDiag = 500.0;
}  // namespace

double FixationModel::alpha(std::size_t n) const {
    const double x = static_cast<double>(n);
    return 1e-3 * x * (1.0 - 0.0005 * x);
}

void FixationModel::validate() const {
    if (dx != 0.0005 || N != 2000) {
        throw DomainError("FixationModel: coefficients are defined for dx = 0.0005, N = 2000 only");
    }
}

FixationSystem fixation_assemble(const FixationModel& mdl) {
    mdl.validate();
    const std::size_t k = mdl.N - 1;
    FixationSystem sys{BandedMatrix(k, 1, 1), BandedMatrix(k, 1, 1),
                       std::vector<double>(k, 0.0)};
    for (std::size_t i = 0; i < k; ++i) {
        const double al = mdl.alpha(i + 1);
        sys.a.at(i, i) = 1.0 + kDiag * al;
        sys.b.at(i, i) = 1.0 - kDiag * al;
        if (i > 0) {
            sys.a.at(i, i - 1) = -kLower * al;
            sys.b.at(i, i - 1) = kLower * al;
        }
        if (i + 1 < k) {
            sys.a.at(i, i + 1) = -kUpper * al;
            sys.b.at(i, i + 1) = kUpper * al;
        }
    }
    // u_0 = 0 and u_N = 1 at both time levels.
    sys.rhs.back() = 2.0 * kUpper * mdl.alpha(k);
    return sys;
}

namespace {

std::vector<double> next_rhs(const FixationSystem& sys, std::span<const double> u) {
    std::vector<double> y = band_matvec(sys.b, u);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += sys.rhs[i];
    return y;
}

}  // namespace

FixationRun fixation_run(const FixationModel& mdl, std::size_t generations) {
    if (generations > mdl.M) throw DomainError("fixation_run: generations exceeds M");
    const FixationSystem sys = fixation_assemble(mdl);
    FixationRun run{std::vector<double>(mdl.N - 1, 0.0), {}, generations};
    run.previous = run.u;
    for (std::size_t m = 0; m < generations; ++m) {
        run.previous = std::move(run.u);
        run.u = thomas_solve(sys.a, next_rhs(sys, run.previous));
    }
    return run;
}

double fixation_probability(const FixationModel& mdl, std::span<const double> u, double p0) {
    if (u.size() != mdl.N - 1) throw DimensionError("fixation_probability: u length != N - 1");
    if (!(p0 >= 0.0 && p0 <= 1.0)) throw DomainError("fixation_probability: p0 outside [0, 1]");
    const double r = p0 / mdl.dx;
    const auto node = [&](std::size_t n) {
        if (n == 0) return 0.0;
        if (n >= mdl.N) return 1.0;
        return u[n - 1];
    };
    const double nearest = std::round(r);
    if (std::abs(r - nearest) < 1e-9) return node(static_cast<std::size_t>(nearest));
    const auto n0 = static_cast<std::size_t>(std::floor(r));
    const double w = r - static_cast<double>(n0);
    return (1.0 - w) * node(n0) + w * node(n0 + 1);
}

RegressionProblem fixation_regression(const FixationModel& mdl, std::span<const double> u_m) {
    if (u_m.size() != mdl.N - 1) throw DimensionError("fixation_regression: u length != N - 1");
    FixationSystem sys = fixation_assemble(mdl);
    std::vector<double> y = next_rhs(sys, u_m);
    return {std::move(sys.a), std::move(y)};
}

PosteriorBand fixation_band(const FixationModel& mdl, std::span<const double> u_m,
                            const PosteriorConfig& cfg, const Rng& rng) {
    PosteriorConfig c = cfg;
    c.clamp = PhysicalRange{0.0, 1.0};
    return credible_band(fixation_regression(mdl, u_m), c, rng);
}

}  // namespace fdci
