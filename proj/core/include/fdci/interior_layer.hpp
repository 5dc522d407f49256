#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fdci/bayes.hpp"
#include "fdci/grid.hpp"
#include "fdci/nonlinear.hpp"

namespace fdci {

/// delta u'' + u (u' - 1) = 0 on [a, b] with u(a) = gamma1, u(b) = gamma2.
struct InteriorLayerModel {
    Grid grid;
    double delta = 0.01;

    double a() const { return grid.lo(); }
    double b() const { return grid.hi(); }
    double gamma1() const { return grid.boundary_lo; }
    double gamma2() const { return grid.boundary_hi; }

    /// [0, 1], gamma1 = -1, gamma2 = 1.5, m interior nodes.
    static InteriorLayerModel canonical(double delta, std::size_t m = 200);
};

NonlinearSystem interior_assemble(const InteriorLayerModel& mdl, std::span<const double> u);

/// (a - b + gamma2 - gamma1) / 2.
double interior_layer_w0(const InteriorLayerModel& mdl);
/// Layer centre (a + b - gamma1 - gamma2) / 2.
double interior_layer_center(const InteriorLayerModel& mdl);

/// x - xbar + w0 tanh(w0 (x - xbar) / (2 delta)).
double interior_perturbation_approx(const InteriorLayerModel& mdl, double x);
std::vector<double> interior_reference(const InteriorLayerModel& mdl);

/// Newton started from the perturbation approximation. The defaults allow
/// 500 iterations and keep the last iterate on non-convergence.
NewtonReport interior_solve(const InteriorLayerModel& mdl,
                            const NewtonConfig& cfg = {1e-14, 500,
                                                       NonConvergencePolicy::ReturnLastIterate});

/// X = J(u_hat), Y = J(u_hat) u_hat.
RegressionProblem interior_regression(const InteriorLayerModel& mdl,
                                      std::span<const double> u_hat);

}  // namespace fdci
