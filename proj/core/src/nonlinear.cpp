#include "fdci/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fdci {

void NewtonConfig::validate() const {
    if (!(tol > 0.0)) throw DomainError("NewtonConfig: tol must be positive");
    if (max_iter < 1) throw DomainError("NewtonConfig: max_iter must be at least 1");
}

double sup_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) {
        if (std::isnan(x)) return x;
        s = std::max(s, std::abs(x));
    }
    return s;
}

NewtonReport newton_solve(const ResidualFn& residual, const JacobianFn& jacobian,
                          std::vector<double> x0, const NewtonConfig& cfg) {
    cfg.validate();
    NewtonReport report;
    report.solution = std::move(x0);

    auto g = residual(report.solution);
    if (g.size() != report.solution.size()) {
        throw DimensionError("newton_solve: residual length does not match the iterate");
    }
    report.initial_residual = sup_norm(g);
    if (report.initial_residual <= cfg.tol) {
        report.converged = true;
        return report;
    }

    while (report.iterations < cfg.max_iter) {
        const std::size_t iteration = report.iterations + 1;
        std::vector<double> step;
        try {
            step = thomas_solve(jacobian(report.solution), g);
        } catch (const SingularMatrixError& e) {
            throw NewtonSingularJacobian(
                iteration, "newton_solve: singular Jacobian at iteration " +
                               std::to_string(iteration) + " (" + e.what() + ")");
        }
        for (std::size_t i = 0; i < step.size(); ++i) report.solution[i] -= step[i];
        g = residual(report.solution);
        const double r = sup_norm(g);
        report.residual_norms.push_back(r);
        report.iterations = iteration;
        if (r <= cfg.tol) {
            report.converged = true;
            return report;
        }
    }

    if (cfg.on_nonconverge == NonConvergencePolicy::Error) {
        const double last = report.residual_norms.back();
        throw NewtonDivergence(std::move(report),
                               "newton_solve: no convergence after " +
                                   std::to_string(cfg.max_iter) +
                                   " iterations (residual " + std::to_string(last) + ")");
    }
    return report;
}

}  // namespace fdci
