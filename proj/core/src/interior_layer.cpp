#include "fdci/interior_layer.hpp"

#include <cmath>

#include "fdci/error.hpp"

namespace fdci {

InteriorLayerModel InteriorLayerModel::canonical(double delta, std::size_t m) {
    if (!(delta > 0.0)) throw DomainError("InteriorLayerModel: delta must be positive");
    return {uniform_grid(0.0, 1.0, m).with_boundary(-1.0, 1.5), delta};
}

NonlinearSystem interior_assemble(const InteriorLayerModel& mdl, std::span<const double> u) {
    const Grid& g = mdl.grid;
    const std::size_t m = g.interior_count();
    if (u.size() != m) throw DimensionError("interior_assemble: u length != m");
    const double d = mdl.delta;

    NonlinearSystem sys{std::vector<double>(m), BandedMatrix(m, m > 1 ? 1 : 0, m > 1 ? 1 : 0)};
    for (std::size_t i = 0; i < m; ++i) {
        const Stencil s = stencil_at(g, i + 1);
        const double left = i == 0 ? mdl.gamma1() : u[i - 1];
        const double right = i + 1 == m ? mdl.gamma2() : u[i + 1];
        const double d2 = s.d2_lower * left + s.d2_centre * u[i] + s.d2_upper * right;
        const double d1 = s.d1_lower * left + s.d1_upper * right;
        sys.g[i] = d * d2 + u[i] * (d1 - 1.0);
        sys.j.at(i, i) = d * s.d2_centre + (d1 - 1.0);
        if (i > 0) sys.j.at(i, i - 1) = d * s.d2_lower + u[i] * s.d1_lower;
        if (i + 1 < m) sys.j.at(i, i + 1) = d * s.d2_upper + u[i] * s.d1_upper;
    }
    return sys;
}

double interior_layer_w0(const InteriorLayerModel& mdl) {
    return 0.5 * (mdl.a() - mdl.b() + mdl.gamma2() - mdl.gamma1());
}

double interior_layer_center(const InteriorLayerModel& mdl) {
    return 0.5 * (mdl.a() + mdl.b() - mdl.gamma1() - mdl.gamma2());
}

double interior_perturbation_approx(const InteriorLayerModel& mdl, double x) {
    const double w0 = interior_layer_w0(mdl);
    const double xbar = interior_layer_center(mdl);
    return x - xbar + w0 * std::tanh(w0 * (x - xbar) / (2.0 * mdl.delta));
}

std::vector<double> interior_reference(const InteriorLayerModel& mdl) {
    std::vector<double> out;
    out.reserve(mdl.grid.interior_count());
    for (double x : mdl.grid.interior()) out.push_back(interior_perturbation_approx(mdl, x));
    return out;
}

NewtonReport interior_solve(const InteriorLayerModel& mdl, const NewtonConfig& cfg) {
    mdl.grid.validate();
    if (!(mdl.delta > 0.0)) throw DomainError("interior_solve: delta must be positive");
    return newton_solve(
        [&](std::span<const double> x) { return interior_assemble(mdl, x).g; },
        [&](std::span<const double> x) { return interior_assemble(mdl, x).j; },
        interior_reference(mdl), cfg);
}

RegressionProblem interior_regression(const InteriorLayerModel& mdl,
                                      std::span<const double> u_hat) {
    NonlinearSystem sys = interior_assemble(mdl, u_hat);
    std::vector<double> y = band_matvec(sys.j, u_hat);
    return {std::move(sys.j), std::move(y)};
}

}  // namespace fdci
