#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fdci_app/commands.hpp"

namespace {

constexpr int kUsageError = 2;
constexpr int kRunError = 1;

}  // namespace

int main(int argc, char** argv) {
    using fdci::app::Options;
    Options opt;
    std::string out_path = "-";
    std::string format = "json";
    bool no_timestamp = false;

    CLI::App app{"Finite-difference solutions with Bayesian credible bands", "fdci"};
    app.set_config("--config", "", "key=value file; command-line flags take precedence");
    app.require_subcommand(1);

    app.add_option("--m", opt.m, "Interior grid points (model default when omitted)");
    app.add_option("--delta", opt.delta, "Interior-layer perturbation parameter")
        ->check(CLI::PositiveNumber);
    app.add_option("--p0", opt.p0, "Initial allele frequencies to report (fixation)")
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--generations", opt.generations, "Generations to run (fixation)");
    app.add_option("--step", opt.step, "Time step at which to report (black-scholes)");
    app.add_option("--grid", opt.grid, "Grid layout")
        ->check(CLI::IsMember({"uniform", "piecewise", "clustered"}));
    app.add_option("--extra-points", opt.extra_points, "Normal-cluster points for --grid clustered")
        ->check(CLI::PositiveNumber);
    app.add_option("--model", opt.refine_model, "Model for the refine subcommand")
        ->check(CLI::IsMember({"pendulum", "interior-layer"}));
    app.add_option("--flag-ratio", opt.policy.flag_ratio, "Flag intervals wider than this multiple of the median width");
    app.add_option("--points-per-interval", opt.policy.points_per_flagged_interval, "Nodes inserted per flagged interval");
    app.add_option("--max-rounds", opt.policy.max_rounds, "Maximum refinement rounds");
    app.add_option("--stop-ratio", opt.policy.stop_ratio, "Stop once max/median width reaches this");
    app.add_option("--tol", opt.newton_tol, "Newton tolerance on the residual sup-norm")
        ->check(CLI::PositiveNumber);
    app.add_option("--max-iter", opt.newton_max_iter, "Newton iteration cap");
    app.add_flag("--identity-diagnostic", opt.identity_diagnostic,
                 "Add the X = I band for comparison (pendulum)");

    app.add_option("--draws", opt.draws, "Posterior draws including burn-in");
    app.add_option("--burn-in", opt.burn_in, "Draws discarded before percentiles");
    app.add_option("--seed", opt.seed, "Random seed")->envname("FDCI_SEED");
    app.add_option("--a", opt.a, "Inverse-gamma shape (default m/2)")->check(CLI::PositiveNumber);
    app.add_option("--b", opt.b, "Inverse-gamma scale (default a+1)")->check(CLI::PositiveNumber);
    app.add_option("--out", out_path, "Output path, - for stdout");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--single-thread", opt.single_thread, "Sample on one thread");
    app.add_flag("--no-timestamp", no_timestamp, "Omit the timestamp from metadata");

    for (const char* name : {"linear-bvp", "pendulum", "interior-layer", "black-scholes",
                             "fixation", "refine"}) {
        app.add_subcommand(name)->fallthrough();
    }
    app.get_subcommand("linear-bvp")->description("u'' = sin x on [0, pi]");
    app.get_subcommand("pendulum")->description("Nonlinear pendulum boundary value problem");
    app.get_subcommand("interior-layer")->description("delta u'' + u(u' - 1) = 0 on [0, 1]");
    app.get_subcommand("black-scholes")->description("European call, implicit scheme");
    app.get_subcommand("fixation")->description("Allele fixation probability, Crank-Nicolson");
    app.get_subcommand("refine")->description("Band-width driven grid refinement");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }
    opt.timestamp = !no_timestamp;

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        opt.posterior().validate();
        opt.policy.validate();
    } catch (const std::exception& e) {
        std::cerr << "fdci: invalid options: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        const auto result = fdci::app::run_command(command, opt);
        fdci::app::export_output(result, format == "csv" ? fdci::app::Format::Csv
                                                         : fdci::app::Format::Json,
                                 out_path);
    } catch (const fdci::app::CommandError& e) {
        std::cerr << "fdci: " << e.where() << ": " << e.what() << '\n';
        return kRunError;
    } catch (const std::exception& e) {
        std::cerr << "fdci: cli::export: " << e.what() << '\n';
        return kRunError;
    }
    return 0;
}
