#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fdci/randgen.hpp"

namespace fdci {

/// Ordered 1-D design points with Dirichlet values at both ends. Unknowns
/// live at the interior nodes; the spacing may vary.
struct Grid {
    std::vector<double> nodes;
    double boundary_lo = 0.0;
    double boundary_hi = 0.0;

    double lo() const { return nodes.front(); }
    double hi() const { return nodes.back(); }
    std::size_t interior_count() const { return nodes.size() - 2; }
    std::span<const double> interior() const {
        return std::span<const double>(nodes).subspan(1, nodes.size() - 2);
    }
    /// Throws DomainError unless nodes are strictly increasing with at
    /// least one interior node.
    void validate() const;
    /// All spacings equal to within rel_tol of the mean spacing.
    bool is_uniform(double rel_tol = 1e-9) const;
    Grid with_boundary(double lo_value, double hi_value) const;
};

Grid uniform_grid(double lo, double hi, std::size_t m);

/// [lo, hi] meshed with spacing close to h; the interval count is rounded
/// to the nearest integer so that segment ends are hit exactly.
struct Segment {
    double lo;
    double hi;
    double h;
};

Grid piecewise_grid(std::span<const Segment> segments);

/// Adds `extra` standard-normal draws, rescaled so their minimum maps to
/// base.lo() and maximum to base.hi(), then merges with the base nodes and
/// drops points closer than 1e-12 to a neighbour. A single extra point is
/// placed at the centre of the domain.
Grid clustered_grid(const Grid& base, std::size_t extra, Rng& rng);

/// Three-point difference weights at an interior node with spacings
/// h_minus = x_i - x_{i-1} and h_plus = x_{i+1} - x_i. They reduce to the
/// centred formulas (1, -2, 1) / h^2 and (-1, 0, 1) / 2h on uniform grids.
struct Stencil {
    double h_minus;
    double h_plus;
    double d2_lower;
    double d2_centre;
    double d2_upper;
    double d1_lower;
    double d1_upper;
};

/// `node` indexes grid.nodes and must be interior.
Stencil stencil_at(const Grid& grid, std::size_t node);

}  // namespace fdci
