#include "fdci/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fdci/error.hpp"

namespace fdci {

void RefinePolicy::validate() const {
    if (!(flag_ratio > 1.0)) throw DomainError("RefinePolicy: flag_ratio must exceed 1");
    if (max_rounds < 1) throw DomainError("RefinePolicy: max_rounds must be >= 1");
    if (points_per_flagged_interval < 1) {
        throw DomainError("RefinePolicy: points_per_flagged_interval must be >= 1");
    }
    if (!(stop_ratio >= 1.0)) throw DomainError("RefinePolicy: stop_ratio must be >= 1");
}

namespace {

double median(std::vector<double> v) {
    return percentile(v, PercentileSpec(0.5));
}

}  // namespace

std::vector<std::size_t> flag_intervals(const Grid& grid, const PosteriorBand& band,
                                        const RefinePolicy& policy) {
    policy.validate();
    const std::size_t m = grid.interior_count();
    if (band.width.size() != m) throw DimensionError("flag_intervals: band not aligned with grid");
    const double threshold = policy.flag_ratio * median(band.width);
    const auto width_at = [&](std::size_t node) {
        return node == 0 || node == m + 1 ? 0.0 : band.width[node - 1];
    };
    std::vector<std::size_t> flags;
    for (std::size_t i = 0; i <= m; ++i) {
        if (std::max(width_at(i), width_at(i + 1)) > threshold) flags.push_back(i);
    }
    return flags;
}

Grid refine(const Grid& grid, std::span<const std::size_t> flags, const RefinePolicy& policy) {
    policy.validate();
    const std::size_t intervals = grid.nodes.size() - 1;
    std::vector<bool> marked(intervals, false);
    for (std::size_t f : flags) {
        if (f >= intervals) {
            throw DimensionError("refine: interval index " + std::to_string(f) + " out of range");
        }
        marked[f] = true;
    }
    const std::size_t k = policy.points_per_flagged_interval;
    Grid out = grid;
    out.nodes.clear();
    for (std::size_t i = 0; i < intervals; ++i) {
        const double x0 = grid.nodes[i];
        const double x1 = grid.nodes[i + 1];
        out.nodes.push_back(x0);
        if (!marked[i]) continue;
        for (std::size_t j = 1; j <= k; ++j) {
            out.nodes.push_back(x0 + (x1 - x0) * (static_cast<double>(j) /
                                                  static_cast<double>(k + 1)));
        }
    }
    out.nodes.push_back(grid.nodes.back());
    out.validate();
    return out;
}

namespace {

template <class Model, class Solve, class Regress, class Reference>
RefineHistory run_loop(Model mdl, const RefinePolicy& policy, const PosteriorConfig& cfg,
                       const Rng& rng, Solve solve, Regress regress, Reference reference) {
    policy.validate();
    cfg.validate();
    RefineHistory hist;
    for (std::size_t round = 0; round < policy.max_rounds; ++round) {
        RefineRound rec;
        std::vector<std::size_t> flags;
        try {
            const NewtonReport rep = solve(mdl);
            hist.band = credible_band(regress(mdl, rep.solution), cfg, rng.substream(round));
            rec.interior_nodes = mdl.grid.interior_count();
            rec.max_width = *std::max_element(hist.band.width.begin(), hist.band.width.end());
            rec.median_width = median(hist.band.width);
            rec.newton_converged = rep.converged;
            rec.newton_iterations = rep.iterations;
            const std::vector<double> ref = reference(mdl);
            double err = 0.0;
            for (std::size_t i = 0; i < ref.size(); ++i) {
                err = std::max(err, std::abs(rep.solution[i] - ref[i]));
            }
            rec.sup_error = err;
            hist.solution = rep.solution;
            hist.grid = mdl.grid;
            if (rec.max_width <= policy.stop_ratio * rec.median_width) {
                hist.stop_ratio_met = true;
            } else {
                flags = flag_intervals(mdl.grid, hist.band, policy);
            }
        } catch (const Error& e) {
            throw ConvergenceError("adapt_loop: round " + std::to_string(round + 1) + ": " +
                                   e.what());
        }
        rec.flagged = flags.size();
        hist.rounds.push_back(rec);
        if (flags.empty()) break;
        if (round + 1 < policy.max_rounds) mdl.grid = refine(mdl.grid, flags, policy);
    }
    return hist;
}

}  // namespace

RefineHistory adapt_loop(const PendulumModel& mdl, const RefinePolicy& policy,
                         const PosteriorConfig& cfg, const Rng& rng,
                         const NewtonConfig& newton) {
    return run_loop(
        mdl, policy, cfg, rng,
        [&](const PendulumModel& m) { return pendulum_solve(m, newton); },
        [](const PendulumModel& m, const std::vector<double>& x) {
            return pendulum_regression(m, x);
        },
        [](const PendulumModel& m) { return pendulum_reference(m.grid); });
}

RefineHistory adapt_loop(const InteriorLayerModel& mdl, const RefinePolicy& policy,
                         const PosteriorConfig& cfg, const Rng& rng,
                         const NewtonConfig& newton) {
    return run_loop(
        mdl, policy, cfg, rng,
        [&](const InteriorLayerModel& m) { return interior_solve(m, newton); },
        [](const InteriorLayerModel& m, const std::vector<double>& x) {
            return interior_regression(m, x);
        },
        [](const InteriorLayerModel& m) { return interior_reference(m); });
}

}  // namespace fdci
