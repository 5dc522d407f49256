#include "fdci_app/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <numbers>

#include "fdci/black_scholes.hpp"
#include "fdci/error.hpp"
#include "fdci/fixation.hpp"
#include "fdci/interior_layer.hpp"
#include "fdci/linear_bvp.hpp"
#include "fdci/pendulum.hpp"

namespace fdci::app {

PosteriorConfig Options::posterior() const {
    PosteriorConfig c;
    c.draws = draws;
    c.burn_in = burn_in;
    c.seed = seed;
    c.a = a;
    c.b = b;
    c.threads = single_thread ? 1 : 0;
    return c;
}

namespace {

/// Runs fn, re-raising library failures tagged with `where`.
template <class Fn>
auto stage(const char* where, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const CommandError&) {
        throw;
    } catch (const std::exception& e) {
        throw CommandError(where, e.what());
    }
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Json base_metadata(const char* model, const Options& opt) {
    Json md = Json::object();
    md["model"] = model;
    md["parameters"] = Json::object();
    md["seed"] = opt.seed;
    md["draws"] = opt.draws;
    md["burn_in"] = opt.burn_in;
    if (opt.timestamp) md["timestamp"] = utc_timestamp();
    return md;
}

void attach_band(RunOutput& out, const PosteriorBand& band) {
    out.posterior_mean = band.mean;
    out.ci_lower = band.lower;
    out.ci_upper = band.upper;
    out.width = band.width;
    out.scaled_width = band.scaled_width;
    out.metadata["a"] = band.a;
    out.metadata["b"] = band.b;
    out.metadata["kept_draws"] = band.kept_draws;
    const auto [mn, mx] = std::minmax_element(band.width.begin(), band.width.end());
    out.metadata["max_width"] = *mx;
    out.metadata["min_width"] = *mn;
}

std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

void attach_errors(RunOutput& out) {
    out.abs_error.resize(out.exact.size());
    for (std::size_t i = 0; i < out.exact.size(); ++i) {
        out.abs_error[i] = std::abs(out.fd_solution[i] - out.exact[i]);
    }
    out.metadata["max_abs_error"] = max_abs(out.abs_error);
}

void attach_newton(RunOutput& out, const NewtonReport& rep) {
    out.metadata["newton"] = {{"converged", rep.converged},
                              {"iterations", rep.iterations},
                              {"initial_residual", rep.initial_residual},
                              {"final_residual", rep.residual_norms.empty()
                                                     ? rep.initial_residual
                                                     : rep.residual_norms.back()}};
}

NewtonConfig newton_config(const Options& opt, std::size_t default_iter,
                           NonConvergencePolicy policy) {
    NewtonConfig c;
    c.tol = opt.newton_tol;
    c.max_iter = opt.newton_max_iter ? opt.newton_max_iter : default_iter;
    c.on_nonconverge = policy;
    return c;
}

Grid pendulum_grid(const Options& opt) {
    const std::size_t m = opt.m ? opt.m : 124;
    if (opt.grid == "uniform") return PendulumModel::canonical_uniform(m).grid;
    if (opt.grid == "piecewise") return PendulumModel::canonical_piecewise().grid;
    if (opt.grid == "clustered") {
        Rng rng(opt.seed, 1);
        return clustered_grid(PendulumModel::canonical_uniform(m).grid, opt.extra_points, rng);
    }
    throw std::invalid_argument("unknown grid '" + opt.grid + "'");
}

InteriorLayerModel interior_model(const Options& opt) {
    InteriorLayerModel mdl = InteriorLayerModel::canonical(opt.delta, opt.m ? opt.m : 200);
    if (opt.grid == "clustered") {
        Rng rng(opt.seed, 1);
        mdl.grid = clustered_grid(mdl.grid, opt.extra_points, rng);
    } else if (opt.grid != "uniform") {
        throw std::invalid_argument("interior-layer supports --grid uniform|clustered");
    }
    return mdl;
}

Json history_json(const RefineHistory& h) {
    Json rounds = Json::array();
    for (const RefineRound& r : h.rounds) {
        Json j = {{"interior_nodes", r.interior_nodes},
                  {"max_width", r.max_width},
                  {"median_width", r.median_width},
                  {"newton_converged", r.newton_converged},
                  {"newton_iterations", r.newton_iterations},
                  {"flagged", r.flagged}};
        if (r.sup_error) j["sup_error"] = *r.sup_error;
        rounds.push_back(std::move(j));
    }
    return rounds;
}

}  // namespace

RunOutput run_linear_bvp(const Options& opt) {
    const std::size_t m = opt.m ? opt.m : 99;
    const auto mdl = stage("models::linear_bvp_assemble", [&] { return LinearBvpModel::canonical(m); });
    const RegressionProblem p = stage("models::linear_bvp_assemble", [&] { return linear_bvp_regression(mdl); });
    const double h = mdl.grid.nodes[1] - mdl.grid.nodes[0];

    RunOutput out;
    out.metadata = base_metadata("linear-bvp", opt);
    out.metadata["parameters"] = {{"m", m}, {"h", h}};
    out.x = to_vector(mdl.grid.interior());
    out.fd_solution = stage("linalg::thomas_solve", [&] { return thomas_solve(p.x, p.y); });
    const PosteriorBand band =
        stage("bayes::credible_band", [&] { return credible_band(p, opt.posterior()); });
    attach_band(out, band);
    for (double x : out.x) {
        out.exact.push_back(linear_bvp_exact(x));
        out.truncation_leading.push_back(linear_bvp_truncation_leading(x, h));
    }
    attach_errors(out);
    return out;
}

RunOutput run_pendulum(const Options& opt) {
    const PendulumModel mdl{stage("models::grid", [&] { return pendulum_grid(opt); }).with_boundary(1.2, 1.2)};
    const NewtonReport rep = stage("nonlinear::newton_solve", [&] {
        return pendulum_solve(mdl, newton_config(opt, 100, NonConvergencePolicy::Error));
    });
    const PosteriorBand band = stage("bayes::credible_band", [&] {
        return credible_band(pendulum_regression(mdl, rep.solution), opt.posterior());
    });

    RunOutput out;
    out.metadata = base_metadata("pendulum", opt);
    out.metadata["parameters"] = {{"grid", opt.grid},
                                  {"m", mdl.grid.interior_count()},
                                  {"alpha", mdl.alpha()},
                                  {"beta", mdl.beta()},
                                  {"t0", kReferencePendulum.t0},
                                  {"k", kReferencePendulum.k}};
    if (opt.grid == "clustered") out.metadata["parameters"]["extra_points"] = opt.extra_points;
    attach_newton(out, rep);
    out.x = to_vector(mdl.grid.interior());
    out.fd_solution = rep.solution;
    attach_band(out, band);
    out.exact = pendulum_reference(mdl.grid);
    attach_errors(out);
    if (opt.identity_diagnostic) {
        const PosteriorBand diag = stage("bayes::identity_diagnostic", [&] {
            return identity_diagnostic(rep.solution, opt.posterior(), Rng(opt.seed, 2));
        });
        out.extra.emplace_back("identity_lower", diag.lower);
        out.extra.emplace_back("identity_upper", diag.upper);
        out.extra.emplace_back("identity_width", diag.width);
    }
    return out;
}

RunOutput run_interior_layer(const Options& opt) {
    const InteriorLayerModel mdl = stage("models::grid", [&] { return interior_model(opt); });
    const NewtonReport rep = stage("nonlinear::newton_solve", [&] {
        NewtonConfig c = newton_config(opt, 500, NonConvergencePolicy::ReturnLastIterate);
        return interior_solve(mdl, c);
    });
    const PosteriorBand band = stage("bayes::credible_band", [&] {
        return credible_band(interior_regression(mdl, rep.solution), opt.posterior());
    });

    RunOutput out;
    out.metadata = base_metadata("interior-layer", opt);
    out.metadata["parameters"] = {{"delta", mdl.delta},
                                  {"grid", opt.grid},
                                  {"m", mdl.grid.interior_count()},
                                  {"gamma1", mdl.gamma1()},
                                  {"gamma2", mdl.gamma2()},
                                  {"w0", interior_layer_w0(mdl)},
                                  {"xbar", interior_layer_center(mdl)}};
    if (opt.grid == "clustered") out.metadata["parameters"]["extra_points"] = opt.extra_points;
    attach_newton(out, rep);
    out.x = to_vector(mdl.grid.interior());
    out.fd_solution = rep.solution;
    attach_band(out, band);
    out.reference = interior_reference(mdl);
    double d = 0.0;
    for (std::size_t i = 0; i < out.reference.size(); ++i) {
        d = std::max(d, std::abs(out.fd_solution[i] - out.reference[i]));
    }
    out.metadata["sup_distance_to_reference"] = d;
    return out;
}

RunOutput run_black_scholes(const Options& opt) {
    const BlackScholesModel mdl = BlackScholesModel::canonical();
    if (opt.step < 1 || opt.step > mdl.M) {
        throw CommandError("models::bs_step", "--step must lie in [1, M]");
    }
    const BsRun run = stage("models::bs_step", [&] { return bs_run(mdl, opt.step); });
    const PosteriorBand band = stage("bayes::credible_band", [&] {
        return credible_band(bs_regression(mdl, run), opt.posterior());
    });

    RunOutput out;
    out.metadata = base_metadata("black-scholes", opt);
    const double t = mdl.T - static_cast<double>(opt.step) * mdl.dt();
    out.metadata["parameters"] = {{"T", mdl.T},   {"E", mdl.E},         {"r", mdl.r},
                                  {"sigma", mdl.sigma}, {"S_max", mdl.s_max}, {"N", mdl.N},
                                  {"M", mdl.M},   {"step", opt.step},   {"t", t}};
    out.x = bs_nodes(mdl);
    out.fd_solution = run.v;
    attach_band(out, band);
    for (std::size_t i = 0; i < out.x.size(); ++i) {
        const double e = bs_exact(mdl, out.x[i], t);
        out.exact.push_back(e);
        out.rel_error.push_back(e > 0.0 ? std::abs(run.v[i] - e) / e
                                        : std::numeric_limits<double>::quiet_NaN());
    }
    attach_errors(out);
    out.extra.emplace_back("proxy_mean", bs_relative_error_proxy(band, ProxyMode::Mean));
    out.extra.emplace_back("proxy_limit_sum", bs_relative_error_proxy(band, ProxyMode::LimitSum));
    return out;
}

RunOutput run_fixation(const Options& opt) {
    const FixationModel mdl = FixationModel::canonical();
    if (opt.generations < 1) throw CommandError("models::fixation_run", "--generations must be >= 1");
    const FixationRun run = stage("models::fixation_run", [&] { return fixation_run(mdl, opt.generations); });
    const PosteriorBand band = stage("bayes::credible_band", [&] {
        return fixation_band(mdl, run.previous, opt.posterior(), Rng(opt.seed));
    });

    RunOutput out;
    out.metadata = base_metadata("fixation", opt);
    out.metadata["parameters"] = {{"dx", mdl.dx},
                                  {"N", mdl.N},
                                  {"generations", opt.generations},
                                  {"implied_population_size", FixationModel::implied_population_size},
                                  {"implied_selection", FixationModel::implied_selection}};
    out.x.resize(mdl.N - 1);
    for (std::size_t i = 0; i < out.x.size(); ++i) out.x[i] = static_cast<double>(i + 1) * mdl.dx;
    out.fd_solution = run.u;
    attach_band(out, band);
    Json probs = Json::array();
    for (double p0 : opt.p0) {
        stage("models::fixation_probability", [&] {
            probs.push_back({{"p0", p0},
                             {"probability", fixation_probability(mdl, run.u, p0)},
                             {"lower", fixation_probability(mdl, band.lower, p0)},
                             {"upper", fixation_probability(mdl, band.upper, p0)}});
            return 0;
        });
    }
    out.metadata["fixation_probability"] = std::move(probs);
    return out;
}

RunOutput run_refine(const Options& opt) {
    RefineHistory h;
    RunOutput out;
    out.metadata = base_metadata("refine", opt);
    const PosteriorConfig cfg = opt.posterior();
    if (opt.refine_model == "pendulum") {
        const PendulumModel mdl{stage("models::grid", [&] { return pendulum_grid(opt); }).with_boundary(1.2, 1.2)};
        h = stage("adaptive::adapt_loop", [&] {
            return adapt_loop(mdl, opt.policy, cfg, Rng(opt.seed),
                              newton_config(opt, 100, NonConvergencePolicy::Error));
        });
        out.exact = pendulum_reference(h.grid);
    } else if (opt.refine_model == "interior-layer") {
        const InteriorLayerModel mdl = stage("models::grid", [&] { return interior_model(opt); });
        h = stage("adaptive::adapt_loop", [&] {
            return adapt_loop(mdl, opt.policy, cfg, Rng(opt.seed),
                              newton_config(opt, 500, NonConvergencePolicy::ReturnLastIterate));
        });
        InteriorLayerModel last = mdl;
        last.grid = h.grid;
        out.reference = interior_reference(last);
    } else {
        throw std::invalid_argument("--model must be pendulum or interior-layer");
    }
    out.metadata["parameters"] = {{"model", opt.refine_model},
                                  {"grid", opt.grid},
                                  {"flag_ratio", opt.policy.flag_ratio},
                                  {"points_per_flagged_interval", opt.policy.points_per_flagged_interval},
                                  {"max_rounds", opt.policy.max_rounds},
                                  {"stop_ratio", opt.policy.stop_ratio}};
    if (opt.refine_model == "interior-layer") out.metadata["parameters"]["delta"] = opt.delta;
    out.metadata["rounds"] = history_json(h);
    out.metadata["stop_ratio_met"] = h.stop_ratio_met;
    out.x = to_vector(h.grid.interior());
    out.fd_solution = h.solution;
    attach_band(out, h.band);
    if (!out.exact.empty()) attach_errors(out);
    return out;
}

RunOutput run_command(const std::string& name, const Options& opt) {
    if (name == "linear-bvp") return run_linear_bvp(opt);
    if (name == "pendulum") return run_pendulum(opt);
    if (name == "interior-layer") return run_interior_layer(opt);
    if (name == "black-scholes") return run_black_scholes(opt);
    if (name == "fixation") return run_fixation(opt);
    if (name == "refine") return run_refine(opt);
    throw std::invalid_argument("unknown subcommand '" + name + "'");
}

}  // namespace fdci::app
