#include <gtest/gtest.h>

#include <cmath>

#include "fdci/error.hpp"
#include "fdci/interior_layer.hpp"
#include "fdci/linear_bvp.hpp"
#include "fdci/nonlinear.hpp"
#include "fdci/pendulum.hpp"
#include "stats.hpp"

using namespace fdci;
using fdci::testing::max_abs_diff;

TEST(NewtonConfig, Validation) {
    EXPECT_THROW((NewtonConfig{0.0, 10, NonConvergencePolicy::Error}.validate()), DomainError);
    EXPECT_THROW((NewtonConfig{1e-10, 0, NonConvergencePolicy::Error}.validate()), DomainError);
}

TEST(Newton, LinearSystemConvergesInOneStep) {
    const RegressionProblem p = linear_bvp_regression(LinearBvpModel::canonical(20));
    const auto residual = [&](std::span<const double> x) {
        auto g = band_matvec(p.x, x);
        for (std::size_t i = 0; i < g.size(); ++i) g[i] -= p.y[i];
        return g;
    };
    const NewtonReport rep = newton_solve(
        residual, [&](std::span<const double>) { return p.x; },
        std::vector<double>(20, 0.0), NewtonConfig{1e-9, 5, NonConvergencePolicy::Error});
    EXPECT_TRUE(rep.converged);
    EXPECT_EQ(rep.iterations, 1u);
    EXPECT_EQ(rep.iterations, rep.residual_norms.size());
    EXPECT_LE(max_abs_diff(rep.solution, thomas_solve(p.x, p.y)), 1e-12);
}

TEST(Newton, AlreadyConvergedStartTakesNoSteps) {
    const auto residual = [](std::span<const double> x) {
        return std::vector<double>{x[0] - 1.0};
    };
    const auto jac = [](std::span<const double>) { return BandedMatrix::identity(1); };
    const NewtonReport rep = newton_solve(residual, jac, {1.0}, {});
    EXPECT_TRUE(rep.converged);
    EXPECT_EQ(rep.iterations, 0u);
    EXPECT_EQ(rep.initial_residual, 0.0);
}

TEST(Newton, PendulumConvergesQuickly) {
    const auto mdl = PendulumModel::canonical_uniform(124);
    const NewtonReport rep =
        pendulum_solve(mdl, NewtonConfig{1e-12, 10, NonConvergencePolicy::Error});
    EXPECT_TRUE(rep.converged);
    EXPECT_LE(rep.iterations, 10u);
    EXPECT_LE(rep.residual_norms.back(), 1e-12);
    EXPECT_LE(sup_norm(pendulum_assemble(mdl, rep.solution).g), 1e-12);
}

// The sup-norm residual of the m = 124 pendulum system carries a 1/h^2
// factor of about 400, so rounding alone keeps it near 1e-13.
TEST(Newton, PendulumResidualFloorIsAboveMachineTolerance) {
    const auto mdl = PendulumModel::canonical_uniform(124);
    const NewtonReport rep =
        pendulum_solve(mdl, NewtonConfig{1e-14, 30, NonConvergencePolicy::ReturnLastIterate});
    EXPECT_LT(rep.residual_norms.back(), 1e-12);
    const std::size_t n = rep.residual_norms.size();
    ASSERT_GE(n, 3u);
}

TEST(Newton, PendulumQuadraticTail) {
    const auto mdl = PendulumModel::canonical_uniform(124);
    const NewtonReport rep =
        pendulum_solve(mdl, NewtonConfig{1e-12, 10, NonConvergencePolicy::Error});
    std::vector<double> r{rep.initial_residual};
    r.insert(r.end(), rep.residual_norms.begin(), rep.residual_norms.end());
    ASSERT_GE(r.size(), 4u);
    // Last three steps before convergence, skipping the one at rounding level.
    for (std::size_t k = r.size() - 4; k + 2 < r.size(); ++k) {
        EXPECT_LE(r[k + 1], 1e6 * r[k] * r[k]) << "k=" << k;
    }
}

TEST(Newton, Deterministic) {
    const auto mdl = PendulumModel::canonical_uniform(60);
    const NewtonConfig c{1e-12, 20, NonConvergencePolicy::Error};
    const NewtonReport a = pendulum_solve(mdl, c);
    const NewtonReport b = pendulum_solve(mdl, c);
    EXPECT_EQ(a.solution, b.solution);
    EXPECT_EQ(a.residual_norms, b.residual_norms);
}

TEST(Newton, ErrorPolicyCarriesReport) {
    const auto mdl = InteriorLayerModel::canonical(0.01);
    try {
        interior_solve(mdl, NewtonConfig{1e-30, 3, NonConvergencePolicy::Error});
        FAIL() << "expected NewtonDivergence";
    } catch (const NewtonDivergence& e) {
        EXPECT_EQ(e.report().iterations, 3u);
        EXPECT_FALSE(e.report().converged);
    }
}

TEST(Newton, InteriorLayerReturnLastIterate) {
    const auto mdl = InteriorLayerModel::canonical(0.01);
    const NewtonReport rep = interior_solve(mdl);
    EXPECT_EQ(rep.solution.size(), 200u);
    EXPECT_EQ(rep.iterations, rep.residual_norms.size());
    EXPECT_LE(rep.iterations, 500u);
    if (rep.converged) EXPECT_LE(rep.residual_norms.back(), 1e-14);
}

TEST(Newton, SingularJacobianNamesIteration) {
    const auto residual = [](std::span<const double> x) { return std::vector<double>{x[0] * x[0] + 1.0}; };
    const auto jac = [](std::span<const double> x) {
        const std::vector<double> d{2.0 * x[0]};
        return BandedMatrix::diagonal(d);
    };
    try {
        newton_solve(residual, jac, {0.0}, {});
        FAIL() << "expected NewtonSingularJacobian";
    } catch (const NewtonSingularJacobian& e) {
        EXPECT_EQ(e.iteration(), 1u);
    }
}
