#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fdci/bayes.hpp"
#include "fdci/grid.hpp"
#include "fdci/interior_layer.hpp"
#include "fdci/nonlinear.hpp"
#include "fdci/pendulum.hpp"
#include "fdci/randgen.hpp"

namespace fdci {

struct RefinePolicy {
    /// Interval flagged when an endpoint width exceeds flag_ratio * median.
    double flag_ratio = 2.0;
    std::size_t points_per_flagged_interval = 1;
    std::size_t max_rounds = 5;
    /// Stop once max width / median width falls to this value.
    double stop_ratio = 1.5;

    void validate() const;
};

/// One solve + band evaluation.
struct RefineRound {
    std::size_t interior_nodes = 0;
    double max_width = 0.0;
    double median_width = 0.0;
    std::optional<double> sup_error;  ///< against the model reference, if any
    bool newton_converged = false;
    std::size_t newton_iterations = 0;
    std::size_t flagged = 0;  ///< intervals flagged after this round
};

struct RefineHistory {
    std::vector<RefineRound> rounds;
    Grid grid;  ///< grid of the last evaluated round
    std::vector<double> solution;
    PosteriorBand band;
    bool stop_ratio_met = false;
};

/// Interval i joins nodes i and i+1 of the grid. Boundary nodes carry zero
/// width since their values are known.
std::vector<std::size_t> flag_intervals(const Grid& grid, const PosteriorBand& band,
                                        const RefinePolicy& policy);

/// Inserts points_per_flagged_interval equispaced nodes in every flagged
/// interval. Existing nodes are kept.
Grid refine(const Grid& grid, std::span<const std::size_t> flags, const RefinePolicy& policy);

/// Solve, band, flag and refine until the stop ratio is met, nothing is
/// flagged, or max_rounds evaluations have been made. Errors raised during
/// a round are rethrown as ConvergenceError naming the round. The error
/// reference is pendulum_exact with kReferencePendulum.
RefineHistory adapt_loop(const PendulumModel& mdl, const RefinePolicy& policy,
                         const PosteriorConfig& cfg, const Rng& rng,
                         const NewtonConfig& newton = {1e-12, 100, NonConvergencePolicy::Error});

/// The perturbation approximation serves as the reference.
RefineHistory adapt_loop(const InteriorLayerModel& mdl, const RefinePolicy& policy,
                         const PosteriorConfig& cfg, const Rng& rng,
                         const NewtonConfig& newton = {1e-14, 500,
                                                       NonConvergencePolicy::ReturnLastIterate});

}  // namespace fdci
