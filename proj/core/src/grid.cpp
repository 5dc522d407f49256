#include "fdci/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fdci/error.hpp"

namespace fdci {

void Grid::validate() const {
    if (nodes.size() < 3) throw DomainError("Grid: need at least one interior node");
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (!(nodes[i] > nodes[i - 1])) {
            throw DomainError("Grid: nodes not strictly increasing at index " +
                              std::to_string(i));
        }
    }
}

bool Grid::is_uniform(double rel_tol) const {
    const double mean = (hi() - lo()) / static_cast<double>(nodes.size() - 1);
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (std::abs((nodes[i] - nodes[i - 1]) - mean) > rel_tol * mean) return false;
    }
    return true;
}

Grid Grid::with_boundary(double lo_value, double hi_value) const {
    Grid g = *this;
    g.boundary_lo = lo_value;
    g.boundary_hi = hi_value;
    return g;
}

Grid uniform_grid(double lo, double hi, std::size_t m) {
    if (!(lo < hi)) throw DomainError("uniform_grid: need lo < hi");
    if (m < 1) throw DomainError("uniform_grid: need m >= 1");
    Grid g;
    g.nodes.resize(m + 2);
    const double n = static_cast<double>(m + 1);
    for (std::size_t i = 0; i <= m + 1; ++i) {
        g.nodes[i] = lo + (hi - lo) * (static_cast<double>(i) / n);
    }
    g.nodes.back() = hi;
    return g;
}

Grid piecewise_grid(std::span<const Segment> segments) {
    if (segments.empty()) throw DomainError("piecewise_grid: no segments");
    Grid g;
    g.nodes.push_back(segments.front().lo);
    for (std::size_t s = 0; s < segments.size(); ++s) {
        const Segment& seg = segments[s];
        if (!(seg.lo < seg.hi) || !(seg.h > 0.0)) {
            throw DomainError("piecewise_grid: segment " + std::to_string(s) + " is empty");
        }
        if (s > 0) {
            const double join = segments[s - 1].hi;
            const double tol = 1e-12 * std::max(1.0, std::abs(join));
            if (std::abs(seg.lo - join) > tol) {
                throw DomainError(std::string("piecewise_grid: ") +
                                  (seg.lo < join ? "overlap" : "gap") + " before segment " +
                                  std::to_string(s));
            }
        }
        const auto count = std::max<long>(1, std::lround((seg.hi - seg.lo) / seg.h));
        const double c = static_cast<double>(count);
        for (long k = 1; k <= count; ++k) {
            g.nodes.push_back(seg.lo + (seg.hi - seg.lo) * (static_cast<double>(k) / c));
        }
        g.nodes.back() = seg.hi;
    }
    g.validate();
    return g;
}

Grid clustered_grid(const Grid& base, std::size_t extra, Rng& rng) {
    if (extra < 1) throw DomainError("clustered_grid: need at least one extra point");
    base.validate();
    const double lo = base.lo();
    const double hi = base.hi();

    std::vector<double> pts = draw_standard_normal(rng, extra);
    const auto [mn, mx] = std::minmax_element(pts.begin(), pts.end());
    const double zmin = *mn;
    const double zmax = *mx;
    for (double& p : pts) {
        p = zmax > zmin ? lo + (hi - lo) * ((p - zmin) / (zmax - zmin)) : 0.5 * (lo + hi);
    }

    pts.insert(pts.end(), base.nodes.begin(), base.nodes.end());
    std::sort(pts.begin(), pts.end());
    Grid g;
    g.boundary_lo = base.boundary_lo;
    g.boundary_hi = base.boundary_hi;
    g.nodes.push_back(pts.front());
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i] - g.nodes.back() > 1e-12) g.nodes.push_back(pts[i]);
    }
    // Keep the exact end points even if a rescaled draw landed within 1e-12.
    g.nodes.front() = lo;
    if (hi - g.nodes.back() <= 1e-12) {
        g.nodes.back() = hi;
    } else {
        g.nodes.push_back(hi);
    }
    g.validate();
    return g;
}

Stencil stencil_at(const Grid& grid, std::size_t node) {
    if (node == 0 || node + 1 >= grid.nodes.size()) {
        throw DimensionError("stencil_at: node " + std::to_string(node) + " is not interior");
    }
    Stencil s{};
    s.h_minus = grid.nodes[node] - grid.nodes[node - 1];
    s.h_plus = grid.nodes[node + 1] - grid.nodes[node];
    const double sum = s.h_minus + s.h_plus;
    s.d2_lower = 2.0 / (s.h_minus * sum);
    s.d2_centre = -2.0 / (s.h_minus * s.h_plus);
    s.d2_upper = 2.0 / (s.h_plus * sum);
    s.d1_lower = -1.0 / sum;
    s.d1_upper = 1.0 / sum;
    return s;
}

}  // namespace fdci
