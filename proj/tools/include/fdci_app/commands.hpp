#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fdci/adaptive.hpp"
#include "fdci/bayes.hpp"
#include "fdci_app/run_output.hpp"

namespace fdci::app {

/// Options shared by every subcommand plus the model knobs. Fields not
/// used by a model are ignored.
struct Options {
    std::size_t m = 0;  ///< 0 picks the model default
    double delta = 0.01;
    std::vector<double> p0{0.1};
    std::size_t generations = 1000;
    std::size_t step = 10;
    std::string grid = "uniform";
    std::size_t extra_points = 200;
    std::string refine_model = "interior-layer";
    RefinePolicy policy;
    double newton_tol = 1e-12;
    std::size_t newton_max_iter = 0;  ///< 0 picks the model default
    bool identity_diagnostic = false;

    std::size_t draws = 50500;
    std::size_t burn_in = 500;
    std::uint64_t seed = 1;
    std::optional<double> a;
    std::optional<double> b;
    bool single_thread = false;
    bool timestamp = true;

    PosteriorConfig posterior() const;
};

/// Raised by the pipelines; `where` names the failing module::operation.
class CommandError : public std::runtime_error {
public:
    CommandError(std::string where, const std::string& what)
        : std::runtime_error(what), where_(std::move(where)) {}
    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

RunOutput run_linear_bvp(const Options& opt);
RunOutput run_pendulum(const Options& opt);
RunOutput run_interior_layer(const Options& opt);
RunOutput run_black_scholes(const Options& opt);
RunOutput run_fixation(const Options& opt);
RunOutput run_refine(const Options& opt);

/// Dispatches on the subcommand name.
RunOutput run_command(const std::string& name, const Options& opt);

}  // namespace fdci::app
