#pragma once

#include <cstddef>
#include <vector>

#include "fdci/bayes.hpp"
#include "fdci/grid.hpp"
#include "fdci/linalg.hpp"

namespace fdci {

/// u''(x) = sin(x) with Dirichlet data carried by the grid.
struct LinearBvpModel {
    Grid grid;

    /// [0, pi] with u(0) = 1, u(pi) = pi + 1 and m interior nodes.
    static LinearBvpModel canonical(std::size_t m);
};

/// (1/h^2) A U = F with A = tridiag(1, -2, 1) kept unscaled and the
/// boundary values folded into F.
struct LinearBvpSystem {
    BandedMatrix a;
    std::vector<double> f;
    double h = 0.0;
};

/// Throws DomainError on a non-uniform grid.
LinearBvpSystem linear_bvp_assemble(const LinearBvpModel& mdl);

/// Finite-difference solution at the interior nodes.
std::vector<double> linear_bvp_solve(const LinearBvpModel& mdl);

/// X = (1/h^2) A, Y = F.
RegressionProblem linear_bvp_regression(const LinearBvpModel& mdl);

/// -sin(x) + x + 1.
double linear_bvp_exact(double x);

/// Leading local truncation term -(h^2 / 12) sin(x).
double linear_bvp_truncation_leading(double x, double h);

}  // namespace fdci
