#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fdci/error.hpp"
#include "fdci/linalg.hpp"

namespace fdci {

enum class NonConvergencePolicy { Error, ReturnLastIterate };

struct NewtonConfig {
    double tol = 1e-14;  ///< on the sup-norm of the residual
    std::size_t max_iter = 100;
    NonConvergencePolicy on_nonconverge = NonConvergencePolicy::Error;

    void validate() const;
};

/// residual_norms[k] is the sup-norm of G after the (k+1)-th update;
/// initial_residual is the norm at the starting point.
struct NewtonReport {
    std::vector<double> solution;
    std::vector<double> residual_norms;
    double initial_residual = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Raised with policy Error when max_iter is exhausted.
class NewtonDivergence : public ConvergenceError {
public:
    NewtonDivergence(NewtonReport report, const std::string& what)
        : ConvergenceError(what), report_(std::move(report)) {}
    const NewtonReport& report() const noexcept { return report_; }

private:
    NewtonReport report_;
};

/// Raised when the Jacobian is singular at some iterate.
class NewtonSingularJacobian : public Error {
public:
    NewtonSingularJacobian(std::size_t iteration, const std::string& what)
        : Error(what), iteration_(iteration) {}
    std::size_t iteration() const noexcept { return iteration_; }

private:
    std::size_t iteration_;
};

/// Residual G and tridiagonal Jacobian J evaluated at one iterate.
struct NonlinearSystem {
    std::vector<double> g;
    BandedMatrix j;
};

using ResidualFn = std::function<std::vector<double>(std::span<const double>)>;
using JacobianFn = std::function<BandedMatrix(std::span<const double>)>;

/// Undamped Newton iteration x <- x - J(x)^{-1} G(x) with a tridiagonal
/// Jacobian solved by the Thomas algorithm.
NewtonReport newton_solve(const ResidualFn& residual, const JacobianFn& jacobian,
                          std::vector<double> x0, const NewtonConfig& cfg);

double sup_norm(std::span<const double> v);

}  // namespace fdci
