#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fdci/black_scholes.hpp"
#include "fdci/dense.hpp"
#include "fdci/error.hpp"
#include "fdci/fixation.hpp"
#include "fdci/grid.hpp"
#include "fdci/interior_layer.hpp"
#include "fdci/linear_bvp.hpp"
#include "fdci/pendulum.hpp"
#include "stats.hpp"

using namespace fdci;
using fdci::testing::max_abs_diff;
constexpr double kPi = std::numbers::pi;

// ---- grid ------------------------------------------------------------------

TEST(UniformGrid, BvpSpacing) {
    const Grid g = uniform_grid(0.0, kPi, 99);
    EXPECT_EQ(g.nodes.size(), 101u);
    EXPECT_NEAR(g.nodes[1] - g.nodes[0], kPi / 100.0, 1e-15);
    EXPECT_EQ(g.nodes.back(), kPi);
    EXPECT_TRUE(g.is_uniform());
}

TEST(UniformGrid, SingleInterior) {
    const Grid g = uniform_grid(0.0, 1.0, 1);
    EXPECT_EQ(g.nodes, (std::vector<double>{0.0, 0.5, 1.0}));
}

TEST(UniformGrid, PendulumSpacingIsNotFourEightieths) {
    const Grid g = uniform_grid(0.0, 2.0 * kPi, 124);
    EXPECT_NEAR(g.nodes[1], 2.0 * kPi / 125.0, 1e-15);
    EXPECT_GT(std::abs(g.nodes[1] - 0.05), 2e-4);
}

TEST(UniformGrid, BadInterval) {
    EXPECT_THROW(uniform_grid(1.0, 1.0, 3), DomainError);
    EXPECT_THROW(uniform_grid(0.0, 1.0, 0), DomainError);
}

TEST(PiecewiseGrid, RegridCountNear124) {
    const auto segs = pendulum_regrid_segments();
    const Grid g = piecewise_grid(segs);
    const long m = static_cast<long>(g.interior_count());
    EXPECT_LE(std::abs(m - 124), 2);
    EXPECT_FALSE(g.is_uniform());
    for (std::size_t i = 1; i < g.nodes.size(); ++i) ASSERT_GT(g.nodes[i], g.nodes[i - 1]);
    EXPECT_EQ(g.nodes.front(), 0.0);
    EXPECT_EQ(g.nodes.back(), 2.0 * kPi);
}

TEST(PiecewiseGrid, SingleSegmentEqualsUniform) {
    const std::vector<Segment> segs{{0.0, 1.0, 0.1}};
    const Grid g = piecewise_grid(segs);
    EXPECT_LE(max_abs_diff(g.nodes, uniform_grid(0.0, 1.0, 9).nodes), 1e-15);
}

TEST(PiecewiseGrid, EqualSegmentsEqualUniformOverUnion) {
    const std::vector<Segment> segs{{0.0, 1.0, 0.1}, {1.0, 2.0, 0.1}};
    const Grid g = piecewise_grid(segs);
    ASSERT_EQ(g.nodes.size(), 21u);
    EXPECT_LE(max_abs_diff(g.nodes, uniform_grid(0.0, 2.0, 19).nodes), 1e-14);
}

TEST(PiecewiseGrid, GapAndOverlapRejected) {
    const std::vector<Segment> gap{{0.0, 1.0, 0.1}, {1.1, 2.0, 0.1}};
    const std::vector<Segment> overlap{{0.0, 1.0, 0.1}, {0.9, 2.0, 0.1}};
    EXPECT_THROW(piecewise_grid(gap), DomainError);
    EXPECT_THROW(piecewise_grid(overlap), DomainError);
}

TEST(ClusteredGrid, AddsPointsNearCentre) {
    const Grid base = uniform_grid(0.0, 1.0, 200);
    Rng rng(1);
    const Grid g = clustered_grid(base, 200, rng);
    // Rescaling sends the extreme draws onto the end points, which merge.
    EXPECT_EQ(g.interior_count(), 200u + 198u);
    EXPECT_EQ(g.nodes.front(), 0.0);
    EXPECT_EQ(g.nodes.back(), 1.0);
    std::size_t middle = 0, outer = 0;
    for (double x : g.interior()) (std::abs(x - 0.5) < 0.25 ? middle : outer)++;
    EXPECT_GT(middle, outer + 100);
}

TEST(ClusteredGrid, LargeCluster) {
    Rng rng(3);
    const Grid g = clustered_grid(uniform_grid(0.0, 1.0, 200), 5000, rng);
    EXPECT_GE(g.interior_count(), 5190u);
    g.validate();
}

TEST(ClusteredGrid, SingleExtraIsDeterministic) {
    const Grid base = uniform_grid(0.0, 1.0, 4);
    Rng a(9), b(9);
    const Grid ga = clustered_grid(base, 1, a);
    EXPECT_EQ(ga.nodes, clustered_grid(base, 1, b).nodes);
    EXPECT_EQ(ga.interior_count(), 5u);
    // Here the centre coincides with an existing node.
    Rng c(9);
    EXPECT_EQ(clustered_grid(uniform_grid(0.0, 1.0, 3), 1, c).interior_count(), 3u);
}

TEST(Stencil, ReducesToCentredFormulas) {
    const Grid g = uniform_grid(0.0, 1.0, 9);
    const Stencil s = stencil_at(g, 4);
    EXPECT_NEAR(s.d2_lower, 100.0, 1e-9);
    EXPECT_NEAR(s.d2_centre, -200.0, 1e-9);
    EXPECT_NEAR(s.d1_upper, 5.0, 1e-12);
    EXPECT_THROW(stencil_at(g, 0), DimensionError);
}

TEST(Stencil, ExactOnQuadraticsNonUniform) {
    Grid g;
    g.nodes = {0.0, 0.1, 0.35, 0.4, 1.0};
    for (std::size_t i = 1; i + 1 < g.nodes.size(); ++i) {
        const Stencil s = stencil_at(g, i);
        const auto f = [](double x) { return 3 * x * x - x + 2; };
        const double d2 = s.d2_lower * f(g.nodes[i - 1]) + s.d2_centre * f(g.nodes[i]) +
                          s.d2_upper * f(g.nodes[i + 1]);
        EXPECT_NEAR(d2, 6.0, 1e-10);
        const auto l = [](double x) { return 2 * x + 1; };
        EXPECT_NEAR(s.d1_lower * l(g.nodes[i - 1]) + s.d1_upper * l(g.nodes[i + 1]), 2.0, 1e-12);
    }
}

// ---- linear BVP -----------------------------------------------------------

TEST(LinearBvp, RightHandSideBoundaryTerms) {
    const auto mdl = LinearBvpModel::canonical(99);
    const LinearBvpSystem s = linear_bvp_assemble(mdl);
    const double h = kPi / 100.0;
    EXPECT_NEAR(s.h, h, 1e-15);
    EXPECT_NEAR(s.f[0], std::sin(h) - 1.0 / (h * h), 1e-9);
    EXPECT_NEAR(s.f[98], std::sin(99 * h) - (kPi + 1.0) / (h * h), 1e-9);
    EXPECT_EQ(s.a(5, 5), -2.0);
    EXPECT_EQ(s.a(5, 6), 1.0);
    for (std::size_t i = 0; i < 99; ++i)
        for (std::size_t j = 0; j < 99; ++j) EXPECT_EQ(s.a(i, j), s.a(j, i));
}

TEST(LinearBvp, SingleUnknownByHand) {
    // (1/h^2)(1 - 2U + pi + 1) = sin(pi/2), h = pi/2.
    const auto u = linear_bvp_solve(LinearBvpModel::canonical(1));
    ASSERT_EQ(u.size(), 1u);
    EXPECT_NEAR(u[0], (kPi + 2.0 - kPi * kPi / 4.0) / 2.0, 1e-14);
}

TEST(LinearBvp, NonUniformRejected) {
    LinearBvpModel mdl = LinearBvpModel::canonical(5);
    mdl.grid.nodes[2] += 0.05;
    EXPECT_THROW(linear_bvp_assemble(mdl), DomainError);
}

TEST(LinearBvp, ExactSolution) {
    EXPECT_DOUBLE_EQ(linear_bvp_exact(0.0), 1.0);
    EXPECT_NEAR(linear_bvp_exact(kPi), kPi + 1.0, 1e-15);
    EXPECT_NEAR(linear_bvp_exact(kPi / 2.0), kPi / 2.0, 1e-15);
}

TEST(LinearBvp, TruncationTerm) {
    EXPECT_EQ(linear_bvp_truncation_leading(0.0, 0.1), 0.0);
    const double h = kPi / 100.0;
    EXPECT_DOUBLE_EQ(linear_bvp_truncation_leading(kPi / 2.0, h), -(h * h) / 12.0);
    for (double x = 0.1; x < kPi; x += 0.3) EXPECT_LT(linear_bvp_truncation_leading(x, h), 0.0);
}

TEST(LinearBvp, TruncationMatchesResidualOfExactSolution) {
    const auto mdl = LinearBvpModel::canonical(99);
    const RegressionProblem p = linear_bvp_regression(mdl);
    std::vector<double> u;
    for (double x : mdl.grid.interior()) u.push_back(linear_bvp_exact(x));
    const auto xu = band_matvec(p.x, u);
    const double h = kPi / 100.0;
    for (std::size_t j = 10; j < 90; j += 10) {
        const double tau = xu[j] - p.y[j];
        // tau = (h^2/12) u'''' + O(h^4) and u'''' = -sin x.
        EXPECT_NEAR(tau, linear_bvp_truncation_leading(mdl.grid.nodes[j + 1], h), 1e-8);
    }
}

TEST(LinearBvp, SecondOrderConvergence) {
    std::vector<double> err;
    for (std::size_t m : {49u, 99u, 199u}) {
        const auto mdl = LinearBvpModel::canonical(m);
        const auto u = linear_bvp_solve(mdl);
        double e = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            e = std::max(e, std::abs(u[i] - linear_bvp_exact(mdl.grid.nodes[i + 1])));
        err.push_back(e);
    }
    for (std::size_t k = 0; k + 1 < err.size(); ++k) {
        EXPECT_NEAR(err[k] / err[k + 1], 4.0, 0.8);
    }
}

// ---- pendulum --------------------------------------------------------------

TEST(Pendulum, EquilibriumHasZeroResidual) {
    const PendulumModel mdl{uniform_grid(0.0, 1.0, 10).with_boundary(0.0, 0.0)};
    const std::vector<double> zero(10, 0.0);
    EXPECT_EQ(sup_norm(pendulum_assemble(mdl, zero).g), 0.0);
}

TEST(Pendulum, JacobianRowUniform) {
    const auto mdl = PendulumModel::canonical_uniform(124);
    const auto theta = pendulum_initial_guess(mdl.grid, 1.2, 1.2);
    const NonlinearSystem s = pendulum_assemble(mdl, theta);
    const double h = 2.0 * kPi / 125.0;
    for (std::size_t i : {1u, 60u, 122u}) {
        EXPECT_NEAR(s.j(i, i - 1), 1.0 / (h * h), 1e-9);
        EXPECT_NEAR(s.j(i, i), -2.0 / (h * h) + std::cos(theta[i]), 1e-9);
        EXPECT_NEAR(s.j(i, i + 1), 1.0 / (h * h), 1e-9);
    }
}

TEST(Pendulum, JacobianMatchesFiniteDifferences) {
    const PendulumModel mdl = PendulumModel::canonical_piecewise();
    auto theta = pendulum_initial_guess(mdl.grid, 1.2, 1.2);
    const NonlinearSystem s = pendulum_assemble(mdl, theta);
    const double e = 1e-6;
    for (std::size_t j : {0u, 30u, 64u, 121u}) {
        theta[j] += e;
        const auto gp = pendulum_assemble(mdl, theta).g;
        theta[j] -= 2 * e;
        const auto gm = pendulum_assemble(mdl, theta).g;
        theta[j] += e;
        for (std::size_t i = (j > 0 ? j - 1 : 0); i <= std::min(j + 1, theta.size() - 1); ++i) {
            EXPECT_NEAR((gp[i] - gm[i]) / (2 * e), s.j(i, j), 1e-4 * std::abs(s.j(i, j)) + 1e-6);
        }
    }
}

TEST(Pendulum, ResidualOfExactSolutionIsSecondOrder) {
    std::vector<double> r;
    for (std::size_t m : {124u, 249u, 499u}) {
        const auto mdl = PendulumModel::canonical_uniform(m);
        r.push_back(sup_norm(pendulum_assemble(mdl, pendulum_reference(mdl.grid)).g));
    }
    EXPECT_NEAR(r[0] / r[1], 4.0, 1.0);
    EXPECT_NEAR(r[1] / r[2], 4.0, 1.0);
}

TEST(Pendulum, InitialGuess) {
    EXPECT_DOUBLE_EQ(pendulum_initial_guess_at(0.0, 1.2, 0.7), 1.2);
    EXPECT_NEAR(pendulum_initial_guess_at(kPi / 2.0, 1.2, 0.7), 0.5, 1e-15);
    EXPECT_NEAR(pendulum_initial_guess_at(kPi, 1.2, 1.2), -1.2, 1e-15);
}

TEST(Pendulum, RegressionMeanRecoversSolution) {
    const auto mdl = PendulumModel::canonical_uniform(124);
    const auto rep = pendulum_solve(mdl, NewtonConfig{1e-12, 20, NonConvergencePolicy::Error});
    EXPECT_LE(max_abs_diff(posterior_mean(pendulum_regression(mdl, rep.solution)), rep.solution),
              1e-9);
}

TEST(Pendulum, SecondOrderAgainstElliptic) {
    std::vector<double> err;
    for (std::size_t m : {124u, 249u}) {
        const auto mdl = PendulumModel::canonical_uniform(m);
        const auto rep = pendulum_solve(mdl, NewtonConfig{1e-12, 20, NonConvergencePolicy::Error});
        err.push_back(max_abs_diff(rep.solution, pendulum_reference(mdl.grid)));
    }
    EXPECT_NEAR(err[0] / err[1], 4.0, 1.2);
}

// ---- interior layer ---------------------------------------------------------

TEST(InteriorLayer, LayerParameters) {
    const auto mdl = InteriorLayerModel::canonical(0.01);
    EXPECT_DOUBLE_EQ(interior_layer_w0(mdl), 0.75);
    EXPECT_DOUBLE_EQ(interior_layer_center(mdl), 0.25);
    EXPECT_EQ(interior_perturbation_approx(mdl, 0.25), 0.0);
    // Outer solution x + gamma2 - b near the right end.
    EXPECT_NEAR(interior_perturbation_approx(mdl, 1.0), 1.0 + 1.5 - 1.0, 1e-6);
}

TEST(InteriorLayer, JacobianRowUniform) {
    const auto mdl = InteriorLayerModel::canonical(0.1);
    const auto u = interior_reference(mdl);
    const NonlinearSystem s = interior_assemble(mdl, u);
    const double h = 1.0 / 201.0, d = 0.1;
    for (std::size_t i : {1u, 100u, 198u}) {
        EXPECT_NEAR(s.j(i, i - 1), d / (h * h) - u[i] / (2 * h), 1e-6);
        EXPECT_NEAR(s.j(i, i), -2 * d / (h * h) + ((u[i + 1] - u[i - 1]) / (2 * h) - 1.0), 1e-6);
        EXPECT_NEAR(s.j(i, i + 1), d / (h * h) + u[i] / (2 * h), 1e-6);
    }
}

// G evaluated on samples of u~ approaches the continuous residual
// delta u~'' + u~ (u~' - 1) as the grid is refined.
TEST(InteriorLayer, DiscreteResidualConsistentWithReference) {
    std::vector<double> gap;
    for (std::size_t m : {200u, 400u, 800u}) {
        const auto mdl = InteriorLayerModel::canonical(0.01, m);
        const double w = interior_layer_w0(mdl), xb = interior_layer_center(mdl), d = mdl.delta;
        const auto g = interior_assemble(mdl, interior_reference(mdl)).g;
        double worst = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double x = mdl.grid.nodes[i + 1];
            const double t = std::tanh(w * (x - xb) / (2 * d));
            const double c = w * w / (2 * d) * (1 - t * t);
            const double u = x - xb + w * t;
            const double r = d * (-2.0 * w / (2 * d) * t * c) + u * c;
            worst = std::max(worst, std::abs(g[i] - r));
        }
        gap.push_back(worst);
    }
    EXPECT_LT(gap[1], gap[0]);
    EXPECT_LT(gap[2], gap[1]);
    EXPECT_NEAR(gap[1] / gap[2], 4.0, 1.0);
}

// Newton reaches the rounding floor of this system (delta / h^2 = 4e3)
// rather than 1e-14.
TEST(InteriorLayer, ModerateDeltaConverges) {
    const auto mdl = InteriorLayerModel::canonical(0.1);
    const auto rep = interior_solve(mdl, NewtonConfig{1e-10, 500, NonConvergencePolicy::Error});
    EXPECT_TRUE(rep.converged);
}

// ---- Black-Scholes -----------------------------------------------------------

TEST(BlackScholes, CanonicalCoefficients) {
    const auto mdl = BlackScholesModel::canonical();
    EXPECT_NEAR(mdl.alpha(), 2e-5, 1e-18);
    EXPECT_NEAR(mdl.beta(), 1.25e-5, 1e-18);
    EXPECT_DOUBLE_EQ(bs_diag(mdl, 1), 1.0 + mdl.beta() + mdl.alpha());
}

TEST(BlackScholes, RowSumsAreOnePlusBeta) {
    const auto mdl = BlackScholesModel::canonical();
    const BandedMatrix a = bs_assemble(mdl);
    for (std::size_t i = 1; i + 1 < a.n(); ++i) {
        EXPECT_NEAR(a(i, i - 1) + a(i, i) + a(i, i + 1), 1.0 + mdl.beta(), 1e-12);
    }
}

// Coefficients of equation n, derived directly from the implicit stencil.
TEST(BlackScholes, AssemblyMatchesStencil) {
    const auto mdl = BlackScholesModel::canonical();
    const BandedMatrix a = bs_assemble(mdl);
    const double al = mdl.alpha(), be = mdl.beta();
    for (std::size_t n : {2u, 50u, 198u}) {
        const double x = static_cast<double>(n);
        const std::size_t i = n - 1;
        EXPECT_NEAR(a(i, i - 1), -0.5 * al * x * x + 0.5 * be * x, 1e-15);
        EXPECT_NEAR(a(i, i + 1), -0.5 * al * x * x - 0.5 * be * x, 1e-15);
    }
}

TEST(BlackScholes, Payoff) {
    const auto mdl = BlackScholesModel::canonical();
    const auto v = bs_payoff(mdl);
    EXPECT_EQ(v[48], 0.0);   // S = 9.8
    EXPECT_EQ(v[49], 0.0);   // S = 10
    EXPECT_NEAR(v[59], 2.0, 1e-12);
}

TEST(BlackScholes, NonnegativeAndMonotoneThroughRun) {
    const auto mdl = BlackScholesModel::canonical();
    const BandedMatrix a = bs_assemble(mdl);
    std::vector<double> v = bs_payoff(mdl);
    for (std::size_t m = 0; m < 200; ++m) {
        v = bs_step(mdl, a, v, m);
        for (std::size_t i = 0; i < v.size(); ++i) {
            ASSERT_GE(v[i], -1e-14) << "step " << m;
            if (i > 0) ASSERT_GE(v[i], v[i - 1] - 1e-12) << "step " << m;
        }
    }
}

TEST(BlackScholes, RunTracksClosedForm) {
    const auto mdl = BlackScholesModel::canonical();
    const BsRun run = bs_run(mdl, mdl.M);
    const auto s = bs_nodes(mdl);
    double err = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) err = std::max(err, std::abs(run.v[i] - bs_exact(mdl, s[i], 0.0)));
    EXPECT_LT(err, 0.02);
}

TEST(BlackScholes, StepRegressionMean) {
    const auto mdl = BlackScholesModel::canonical();
    const BsRun r10 = bs_run(mdl, 10);
    const BsRun r11 = bs_run(mdl, 11);
    EXPECT_LE(max_abs_diff(posterior_mean(bs_regression(mdl, r11)), r11.v), 1e-9);
    EXPECT_LE(max_abs_diff(posterior_mean(bs_regression(mdl, r10)), r10.v), 1e-9);
}

TEST(BlackScholes, ExactPrice) {
    const auto mdl = BlackScholesModel::canonical();
    EXPECT_EQ(bs_exact(mdl, 0.0, 0.1), 0.0);
    EXPECT_NEAR(bs_exact(mdl, 40.0, 0.0), 40.0 - 10.0 * std::exp(-0.1 * 0.25), 1e-3);
    EXPECT_LT(bs_exact(mdl, 10.0, 0.25 - 1e-10), 1e-3);
    EXPECT_GT(bs_exact(mdl, 10.0, 0.25 - 1e-10), 0.0);
    // At the money, t = 0; reference value from an independent evaluation.
    const double c = bs_exact(mdl, 10.0, 0.0);
    EXPECT_NEAR(c, 0.9162911101086468, 1e-7);
}

TEST(BlackScholes, RelativeErrorProxy) {
    PosteriorBand b;
    b.mean = {0.0, 3.0};
    b.lower = {0.0, 2.0};
    b.upper = {0.0, 5.0};
    b.width = {0.0, 3.0};
    auto p = bs_relative_error_proxy(b, ProxyMode::Mean);
    EXPECT_EQ(p[0], 0.0);
    EXPECT_DOUBLE_EQ(p[1], 0.75);
    p = bs_relative_error_proxy(b, ProxyMode::LimitSum);
    EXPECT_DOUBLE_EQ(p[1], 3.0 / 8.0);
    b.width[0] = 0.4;
    EXPECT_DOUBLE_EQ(bs_relative_error_proxy(b, ProxyMode::Mean)[0], 0.4);
}

// ---- fixation ------------------------------------------------------------------

TEST(Fixation, HardCodedCoefficients) {
    const auto mdl = FixationModel::canonical();
    const FixationSystem s = fixation_assemble(mdl);
    for (std::size_t n : {1u, 2u, 1000u, 1999u}) {
        const std::size_t i = n - 1;
        EXPECT_DOUBLE_EQ(s.a(i, i), 1.0 + 500.0 * mdl.alpha(n));
        EXPECT_DOUBLE_EQ(s.b(i, i), 1.0 - 500.0 * mdl.alpha(n));
        if (i > 0) EXPECT_DOUBLE_EQ(s.a(i, i - 1), -249.25 * mdl.alpha(n));
        if (i + 1 < s.a.n()) EXPECT_DOUBLE_EQ(s.b(i, i + 1), 250.75 * mdl.alpha(n));
    }
    EXPECT_DOUBLE_EQ(s.rhs.back(), 501.5 * mdl.alpha(1999));
    EXPECT_EQ(s.rhs[0], 0.0);
}

// Crank-Nicolson applied to u_t = x(1-x)/(4 S) u_xx + s x(1-x) u_x with
// dx = 0.0005, dt = 1 reproduces the hard-coded coefficients for S = 1000,
// s = 0.003.
TEST(Fixation, ImpliedParameters) {
    const auto mdl = FixationModel::canonical();
    const double S = FixationModel::implied_population_size;
    const double sel = FixationModel::implied_selection;
    const double dx = mdl.dx;
    const FixationSystem sys = fixation_assemble(mdl);
    for (std::size_t n : {3u, 700u, 1800u}) {
        const double x = n * dx;
        const double g = x * (1 - x);
        const double diff = g / (4 * S) / (2 * dx * dx);
        const double adv = sel * g / (4 * dx);
        const std::size_t i = n - 1;
        EXPECT_NEAR(sys.a(i, i - 1), -(diff - adv), 1e-12);
        EXPECT_NEAR(sys.a(i, i), 1 + 2 * diff, 1e-12);
        EXPECT_NEAR(sys.a(i, i + 1), -(diff + adv), 1e-12);
    }
}

TEST(Fixation, NonCanonicalRejected) {
    FixationModel m;
    m.N = 1000;
    EXPECT_THROW(fixation_assemble(m), DomainError);
}

TEST(Fixation, StaysInUnitIntervalAndMonotone) {
    const auto mdl = FixationModel::canonical();
    const FixationRun run = fixation_run(mdl, 1000);
    for (double u : run.u) {
        ASSERT_GE(u, 0.0);
        ASSERT_LE(u, 1.0);
    }
    double prev = 0.0;
    for (double p0 = 0.0005; p0 < 1.0; p0 += 0.01) {
        const double u = fixation_probability(mdl, run.u, p0);
        EXPECT_GE(u, prev);
        prev = u;
    }
}

TEST(Fixation, ProbabilityLookup) {
    const auto mdl = FixationModel::canonical();
    std::vector<double> u(1999);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = (i + 1) * 0.0005;
    EXPECT_DOUBLE_EQ(fixation_probability(mdl, u, 0.0005), 0.0005);
    EXPECT_DOUBLE_EQ(fixation_probability(mdl, u, 0.1), u[199]);
    EXPECT_NEAR(fixation_probability(mdl, u, 0.00075), 0.00075, 1e-15);
    EXPECT_EQ(fixation_probability(mdl, u, 0.0), 0.0);
    EXPECT_EQ(fixation_probability(mdl, u, 1.0), 1.0);
    EXPECT_THROW(fixation_probability(mdl, u, 1.5), DomainError);
}

TEST(Fixation, BandIsClamped) {
    const auto mdl = FixationModel::canonical();
    const FixationRun run = fixation_run(mdl, 20);
    PosteriorConfig c;
    c.draws = 2500;
    c.threads = 1;
    const PosteriorBand b = fixation_band(mdl, run.previous, c, Rng(1));
    for (std::size_t i = 0; i < b.size(); ++i) {
        ASSERT_GE(b.lower[i], 0.0);
        ASSERT_LE(b.upper[i], 1.0);
    }
    EXPECT_LE(max_abs_diff(b.mean, run.u), 1e-12);
}
