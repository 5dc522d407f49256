#pragma once

#include <span>
#include <vector>

#include "fdci/bayes.hpp"
#include "fdci/grid.hpp"
#include "fdci/nonlinear.hpp"
#include "fdci/specfun.hpp"

namespace fdci {

/// theta'' = -sin(theta) on [0, T] with theta(0) = alpha, theta(T) = beta.
/// The boundary angles live on the grid.
struct PendulumModel {
    Grid grid;

    double alpha() const { return grid.boundary_lo; }
    double beta() const { return grid.boundary_hi; }

    /// Uniform grid on [0, 2 pi], alpha = beta = 1.2.
    static PendulumModel canonical_uniform(std::size_t m = 124);
    /// Piecewise-uniform grid with spacing 5.3/80 on [0, pi/2] and
    /// [pi, 3 pi/2] and 3.3/80 on the other two quarters.
    static PendulumModel canonical_piecewise();
};

std::vector<Segment> pendulum_regrid_segments();

NonlinearSystem pendulum_assemble(const PendulumModel& mdl, std::span<const double> theta);

/// alpha cos(t) + (beta - 0.2) sin(t).
double pendulum_initial_guess_at(double t, double alpha, double beta);
std::vector<double> pendulum_initial_guess(const Grid& grid, double alpha, double beta);

/// Newton from pendulum_initial_guess.
NewtonReport pendulum_solve(const PendulumModel& mdl, const NewtonConfig& cfg = {});

/// X = J(theta_hat), Y = J(theta_hat) theta_hat.
RegressionProblem pendulum_regression(const PendulumModel& mdl,
                                      std::span<const double> theta_hat);

/// pendulum_exact at the interior nodes.
std::vector<double> pendulum_reference(const Grid& grid,
                                       const PendulumConstants& c = kReferencePendulum);

}  // namespace fdci
