#include "fdci/randgen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fdci/error.hpp"

namespace fdci {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream),
      engine_(splitmix64(seed ^ splitmix64(stream ^ 0xD1B54A32D192ED03ULL))) {}

Rng Rng::substream(std::uint64_t index) const {
    return Rng(seed_, splitmix64(stream_ + 0x632BE59BD9B4E019ULL * (index + 1)));
}

double Rng::uniform() {
    // 53 random bits, shifted by half an ulp so 0 and 1 are never returned.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::standard_normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

std::vector<double> draw_standard_normal(Rng& rng, std::size_t n) {
    std::vector<double> out(n);
    for (double& x : out) x = rng.standard_normal();
    return out;
}

double draw_gamma(Rng& rng, double shape) {
    if (!(shape > 0.0) || !std::isfinite(shape)) {
        throw DomainError("draw_gamma: shape must be positive, got " + std::to_string(shape));
    }
    if (shape < 1.0) {
        const double g = draw_gamma(rng, shape + 1.0);
        return g * std::pow(rng.uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rng.standard_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double draw_inverse_gamma(Rng& rng, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw DomainError("draw_inverse_gamma: parameters must be positive");
    }
    return b / draw_gamma(rng, a);
}

PercentileSpec::PercentileSpec(double q) : q_(q) {
    if (!(q > 0.0 && q < 1.0)) {
        throw DomainError("PercentileSpec: q must lie in (0, 1), got " + std::to_string(q));
    }
}

double percentile_sorted(std::span<const double> sorted, PercentileSpec spec) {
    if (sorted.empty()) throw DomainError("percentile: empty sample");
    const double r = spec.q() * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(r));
    const auto hi = static_cast<std::size_t>(std::ceil(r));
    const double frac = r - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double percentile(std::span<const double> samples, PercentileSpec spec) {
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    return percentile_sorted(sorted, spec);
}

}  // namespace fdci
