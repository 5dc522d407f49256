#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fdci/linalg.hpp"
#include "fdci/randgen.hpp"

namespace fdci {

/// Linear model Y = X beta + eps for one solve or one time step. X is the
/// (square, banded) finite-difference operator and beta the unknown exact
/// solution at the grid nodes.
struct RegressionProblem {
    BandedMatrix x;
    std::vector<double> y;

    std::size_t m() const noexcept { return y.size(); }
    /// Throws DimensionError if X is not m x m.
    void validate() const;
};

/// Closed interval that posterior limits are clamped to after sampling.
struct PhysicalRange {
    double lo;
    double hi;
};

/// Sampling protocol: draw sigma^2 from IG(a, b), then beta from
/// N(mu, sigma^2 (X^T X)^{-1}); discard the first burn_in draws and take
/// per-coordinate percentiles of the rest.
struct PosteriorConfig {
    std::size_t draws = 50500;
    std::size_t burn_in = 500;
    std::optional<double> a;  ///< inverse-gamma shape; defaults to m / 2
    std::optional<double> b;  ///< inverse-gamma scale; defaults to a + 1
    double q_low = 0.025;
    double q_high = 0.975;
    std::uint64_t seed = 1;
    std::optional<PhysicalRange> clamp;
    /// Worker threads for sampling; 0 picks the hardware concurrency.
    /// Output does not depend on this value.
    unsigned threads = 0;

    void validate() const;
    double shape_for(std::size_t m) const;
    double scale_for(std::size_t m) const;
};

/// Pointwise credible band, often reported as confidence intervals.
struct PosteriorBand {
    std::vector<double> mean;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<double> width;
    /// width / (2 * 1.96): an approximate standard error.
    std::vector<double> scaled_width;
    PosteriorConfig config;
    double a = 0.0;
    double b = 0.0;
    std::size_t kept_draws = 0;
    /// Full sampling passes used by the percentile selection.
    std::size_t sampling_passes = 0;

    std::size_t size() const noexcept { return mean.size(); }
};

/// (X^T X)^{-1} X^T Y, evaluated as X^{-1} Y since X is square.
std::vector<double> posterior_mean(const RegressionProblem& p);

/// Monte Carlo credible band. Draws are generated in fixed-size chunks,
/// chunk c using rng.substream(c), so the result is a pure function of
/// (problem, config, rng) regardless of thread count. Percentiles are exact
/// order statistics; memory stays bounded by re-generating the draw
/// sequence over a few selection passes when m * draws is large.
PosteriorBand credible_band(const RegressionProblem& p, const PosteriorConfig& cfg,
                            const Rng& rng);
/// Uses Rng(cfg.seed).
PosteriorBand credible_band(const RegressionProblem& p, const PosteriorConfig& cfg);

/// Band for theta_hat = beta + eps with X = I. Reflects sampling variation
/// only; contrasts with the truncation-driven bands of the Jacobian model.
PosteriorBand identity_diagnostic(std::span<const double> theta_hat,
                                  const PosteriorConfig& cfg, const Rng& rng);

}  // namespace fdci
