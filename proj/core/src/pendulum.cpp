#include "fdci/pendulum.hpp"

#include <cmath>
#include <numbers>

#include "fdci/error.hpp"

namespace fdci {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

PendulumModel PendulumModel::canonical_uniform(std::size_t m) {
    return {uniform_grid(0.0, kTwoPi, m).with_boundary(1.2, 1.2)};
}

std::vector<Segment> pendulum_regrid_segments() {
    constexpr double q = std::numbers::pi / 2.0;
    const double wide = 5.3 / 80.0;
    const double narrow = 3.3 / 80.0;
    return {{0.0, q, wide}, {q, 2 * q, narrow}, {2 * q, 3 * q, wide}, {3 * q, 4 * q, narrow}};
}

PendulumModel PendulumModel::canonical_piecewise() {
    const auto segs = pendulum_regrid_segments();
    return {piecewise_grid(segs).with_boundary(1.2, 1.2)};
}

NonlinearSystem pendulum_assemble(const PendulumModel& mdl, std::span<const double> theta) {
    const Grid& g = mdl.grid;
    const std::size_t m = g.interior_count();
    if (theta.size() != m) throw DimensionError("pendulum_assemble: theta length != m");

    NonlinearSystem sys{std::vector<double>(m), BandedMatrix(m, m > 1 ? 1 : 0, m > 1 ? 1 : 0)};
    for (std::size_t i = 0; i < m; ++i) {
        const Stencil s = stencil_at(g, i + 1);
        const double left = i == 0 ? mdl.alpha() : theta[i - 1];
        const double right = i + 1 == m ? mdl.beta() : theta[i + 1];
        sys.g[i] = s.d2_lower * left + s.d2_centre * theta[i] + s.d2_upper * right +
                   std::sin(theta[i]);
        sys.j.at(i, i) = s.d2_centre + std::cos(theta[i]);
        if (i > 0) sys.j.at(i, i - 1) = s.d2_lower;
        if (i + 1 < m) sys.j.at(i, i + 1) = s.d2_upper;
    }
    return sys;
}

double pendulum_initial_guess_at(double t, double alpha, double beta) {
    return alpha * std::cos(t) + (beta - 0.2) * std::sin(t);
}

std::vector<double> pendulum_initial_guess(const Grid& grid, double alpha, double beta) {
    std::vector<double> x;
    x.reserve(grid.interior_count());
    for (double t : grid.interior()) x.push_back(pendulum_initial_guess_at(t, alpha, beta));
    return x;
}

NewtonReport pendulum_solve(const PendulumModel& mdl, const NewtonConfig& cfg) {
    mdl.grid.validate();
    return newton_solve(
        [&](std::span<const double> x) { return pendulum_assemble(mdl, x).g; },
        [&](std::span<const double> x) { return pendulum_assemble(mdl, x).j; },
        pendulum_initial_guess(mdl.grid, mdl.alpha(), mdl.beta()), cfg);
}

RegressionProblem pendulum_regression(const PendulumModel& mdl,
                                      std::span<const double> theta_hat) {
    NonlinearSystem sys = pendulum_assemble(mdl, theta_hat);
    std::vector<double> y = band_matvec(sys.j, theta_hat);
    return {std::move(sys.j), std::move(y)};
}

std::vector<double> pendulum_reference(const Grid& grid, const PendulumConstants& c) {
    std::vector<double> out;
    out.reserve(grid.interior_count());
    for (double t : grid.interior()) out.push_back(pendulum_exact(t, c));
    return out;
}

}  // namespace fdci
