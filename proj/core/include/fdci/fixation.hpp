#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fdci/bayes.hpp"
#include "fdci/linalg.hpp"
#include "fdci/randgen.hpp"

namespace fdci {

/// Crank-Nicolson scheme for the fixation probability u(x, t) of an allele
/// at initial frequency x after t generations, with u(0, t) = 0 and
/// u(1, t) = 1. The coefficients are fixed for dx = 0.0005, dt = 1.
struct FixationModel {
    double dx = 0.0005;
    std::size_t N = 2000;
    std::size_t M = 6000;

    /// 1e-3 n (1 - 0.0005 n).
    double alpha(std::size_t n) const;
    /// Throws DomainError unless dx and N are the canonical values.
    void validate() const;

    /// Population size and selection coefficient consistent with the
    /// hard-coded coefficients. Documentation only.
    static constexpr double implied_population_size = 1000.0;
    static constexpr double implied_selection = 0.003;

    static FixationModel canonical() { return {}; }
};

/// A u^{m+1} = B u^m + b.
struct FixationSystem {
    BandedMatrix a;
    BandedMatrix b;
    std::vector<double> rhs;
};

FixationSystem fixation_assemble(const FixationModel& mdl);

struct FixationRun {
    std::vector<double> u;         ///< interior values after `generations` steps
    std::vector<double> previous;  ///< interior values one step earlier
    std::size_t generations = 0;
};

/// Starts from u = 0 at every interior node.
FixationRun fixation_run(const FixationModel& mdl, std::size_t generations);

/// u at initial frequency p0, linearly interpolated between nodes and
/// including the boundary values.
double fixation_probability(const FixationModel& mdl, std::span<const double> u, double p0);

/// X = A, Y = B u^m + b.
RegressionProblem fixation_regression(const FixationModel& mdl, std::span<const double> u_m);

/// Band for step m + 1 from u^m, clamped to [0, 1].
PosteriorBand fixation_band(const FixationModel& mdl, std::span<const double> u_m,
                            const PosteriorConfig& cfg, const Rng& rng);

}  // namespace fdci
