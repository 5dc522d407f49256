#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace fdci {

/// Seedable random stream.
///
/// A (seed, stream) pair fully determines the draw sequence. The engine is
/// the standard-specified 64-bit Mersenne Twister and all transforms to
/// continuous variates are implemented here, so sequences are identical on
/// every conforming platform. Parallel work derives independent
/// substreams instead of sharing one generator.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

    /// Independent generator for work item `index` (e.g. a chunk of draws).
    Rng substream(std::uint64_t index) const;

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on the open interval (0, 1).
    double uniform();
    /// Marsaglia polar method.
    double standard_normal();

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

std::vector<double> draw_standard_normal(Rng& rng, std::size_t n);

/// Gamma(shape, rate = 1), Marsaglia-Tsang with the U^(1/a) boost for shape < 1.
double draw_gamma(Rng& rng, double shape);

/// Inverse gamma in the shape-scale form: density proportional to
/// x^(-a-1) exp(-b/x), drawn as b / Gamma(a, 1).
double draw_inverse_gamma(Rng& rng, double a, double b);

/// Probability level for percentile(); 0 < q < 1.
class PercentileSpec {
public:
    explicit PercentileSpec(double q);
    double q() const noexcept { return q_; }

private:
    double q_;
};

/// Linear interpolation between the order statistics at floor(r) and
/// ceil(r), r = q (n - 1) on the ascending sort.
double percentile(std::span<const double> samples, PercentileSpec spec);

/// Same rule on input that is already sorted ascending.
double percentile_sorted(std::span<const double> sorted, PercentileSpec spec);

}  // namespace fdci
