#include <benchmark/benchmark.h>

#include <vector>

#include "fdci/bayes.hpp"
#include "fdci/fixation.hpp"
#include "fdci/linalg.hpp"
#include "fdci/linear_bvp.hpp"
#include "fdci/pendulum.hpp"
#include "fdci/randgen.hpp"

using namespace fdci;

namespace {

BandedMatrix second_difference(std::size_t m) {
    std::vector<double> off(m - 1, 1.0), diag(m, -2.0);
    return BandedMatrix::tridiagonal(off, diag, off);
}

void BM_ThomasSolve(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = second_difference(n);
    const std::vector<double> b(n, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(thomas_solve(a, b));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ThomasSolve)->RangeMultiplier(4)->Range(64, 65536)->Complexity(benchmark::oN);

void BM_BandedCholesky(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto s = normal_equations(second_difference(n));
    for (auto _ : state) benchmark::DoNotOptimize(banded_cholesky(s));
}
BENCHMARK(BM_BandedCholesky)->RangeMultiplier(4)->Range(64, 65536);

void BM_NormalEquationsFactor(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = second_difference(n);
    for (auto _ : state) benchmark::DoNotOptimize(normal_equations_factor(x));
}
BENCHMARK(BM_NormalEquationsFactor)->RangeMultiplier(4)->Range(64, 65536);

void BM_InverseGammaDraw(benchmark::State& state) {
    Rng rng(7);
    for (auto _ : state) benchmark::DoNotOptimize(draw_inverse_gamma(rng, 50.0, 51.0));
}
BENCHMARK(BM_InverseGammaDraw);

// Full band on the m = 99 linear problem; draws scale with the argument.
void BM_CredibleBand(benchmark::State& state) {
    const auto p = linear_bvp_regression(LinearBvpModel::canonical(99));
    PosteriorConfig cfg;
    cfg.draws = static_cast<std::size_t>(state.range(0));
    cfg.burn_in = cfg.draws / 100;
    cfg.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(credible_band(p, cfg));
}
BENCHMARK(BM_CredibleBand)->Arg(5050)->Arg(50500)->Unit(benchmark::kMillisecond);

void BM_PendulumNewton(benchmark::State& state) {
    const auto mdl = PendulumModel::canonical_uniform();
    NewtonConfig cfg;
    cfg.tol = 1e-12;
    for (auto _ : state) benchmark::DoNotOptimize(pendulum_solve(mdl, cfg));
}
BENCHMARK(BM_PendulumNewton)->Unit(benchmark::kMicrosecond);

void BM_FixationRun(benchmark::State& state) {
    const FixationModel mdl;
    const auto gens = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(fixation_run(mdl, gens));
}
BENCHMARK(BM_FixationRun)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
