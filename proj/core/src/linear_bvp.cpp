#include "fdci/linear_bvp.hpp"

#include <cmath>
#include <numbers>

#include "fdci/error.hpp"

namespace fdci {

LinearBvpModel LinearBvpModel::canonical(std::size_t m) {
    constexpr double pi = std::numbers::pi;
    return {uniform_grid(0.0, pi, m).with_boundary(1.0, pi + 1.0)};
}

LinearBvpSystem linear_bvp_assemble(const LinearBvpModel& mdl) {
    const Grid& g = mdl.grid;
    g.validate();
    if (!g.is_uniform()) throw DomainError("linear_bvp_assemble: grid must be uniform");
    const std::size_t m = g.interior_count();
    const double h = (g.hi() - g.lo()) / static_cast<double>(m + 1);
    const double h2 = h * h;

    std::vector<double> off(m - 1, 1.0);
    std::vector<double> diag(m, -2.0);
    LinearBvpSystem sys{BandedMatrix::tridiagonal(off, diag, off), {}, h};
    sys.f.resize(m);
    for (std::size_t j = 0; j < m; ++j) sys.f[j] = std::sin(g.nodes[j + 1]);
    sys.f.front() -= g.boundary_lo / h2;
    sys.f.back() -= g.boundary_hi / h2;
    return sys;
}

std::vector<double> linear_bvp_solve(const LinearBvpModel& mdl) {
    const RegressionProblem p = linear_bvp_regression(mdl);
    return thomas_solve(p.x, p.y);
}

RegressionProblem linear_bvp_regression(const LinearBvpModel& mdl) {
    LinearBvpSystem sys = linear_bvp_assemble(mdl);
    sys.a.scale(1.0 / (sys.h * sys.h));
    return {std::move(sys.a), std::move(sys.f)};
}

double linear_bvp_exact(double x) { return -std::sin(x) + x + 1.0; }

double linear_bvp_truncation_leading(double x, double h) {
    return -(h * h / 12.0) * std::sin(x);
}

}  // namespace fdci
