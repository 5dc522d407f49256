#include "fdci/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "fdci/error.hpp"

namespace fdci {

namespace {

constexpr std::size_t kChunk = 256;                        // draws per substream
constexpr std::size_t kMemoryBudget = std::size_t{1} << 23;  // doubles held at once
constexpr std::size_t kBins = 512;
constexpr double kPilotSigmas = 5.0;
constexpr std::size_t kMaxPasses = 64;

/// Replays the draw sequence. Draw d belongs to chunk d / kChunk and is
/// produced by that chunk's substream, so any chunk can be regenerated
/// independently of the others.
class DrawGenerator {
public:
    DrawGenerator(const BandedCholeskyFactor& factor, std::span<const double> mu,
                  double a, double b, std::size_t total, const Rng& rng)
        : factor_(factor), mu_(mu), a_(a), b_(b), total_(total), rng_(rng) {}

    std::size_t chunk_count() const { return (total_ + kChunk - 1) / kChunk; }

    /// Calls visit(d, beta) for each draw d of `chunk` with first <= d < last.
    template <class Visit>
    void run_chunk(std::size_t chunk, std::size_t first, std::size_t last,
                   std::vector<double>& z, std::vector<double>& beta, Visit&& visit) const {
        Rng rng = rng_.substream(chunk);
        const std::size_t m = mu_.size();
        const std::size_t d0 = chunk * kChunk;
        const std::size_t d1 = std::min(d0 + kChunk, std::min(total_, last));
        for (std::size_t d = d0; d < d1; ++d) {
            const double sigma = std::sqrt(draw_inverse_gamma(rng, a_, b_));
            for (std::size_t i = 0; i < m; ++i) z[i] = rng.standard_normal();
            if (d < first) continue;
            solve_upper_banded_inplace(factor_, z);
            for (std::size_t i = 0; i < m; ++i) beta[i] = mu_[i] + sigma * z[i];
            visit(d, std::span<const double>(beta));
        }
    }

private:
    const BandedCholeskyFactor& factor_;
    std::span<const double> mu_;
    double a_;
    double b_;
    std::size_t total_;
    Rng rng_;
};

/// Runs one pass over draws [first, last). Each worker owns one
/// accumulator; they are returned in worker order for the caller to merge.
template <class Acc, class Make>
std::vector<Acc> run_pass(const DrawGenerator& gen, std::size_t m, std::size_t first,
                          std::size_t last, unsigned threads, Make&& make) {
    const std::size_t c0 = first / kChunk;
    const std::size_t c1 = std::min(gen.chunk_count(), (last + kChunk - 1) / kChunk);
    const std::size_t chunks = c1 > c0 ? c1 - c0 : 0;
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, chunks));

    std::vector<Acc> accs;
    accs.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) accs.push_back(make());

    auto work = [&](std::size_t w) {
        std::vector<double> z(m), beta(m);
        const std::size_t b0 = c0 + chunks * w / workers;
        const std::size_t b1 = c0 + chunks * (w + 1) / workers;
        Acc& acc = accs[w];
        for (std::size_t c = b0; c < b1; ++c) {
            gen.run_chunk(c, first, last, z, beta,
                          [&](std::size_t d, std::span<const double> v) { acc.visit(d, v); });
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    return accs;
}

enum class Mode { Range, Histogram, Collect, Done };

/// One requested percentile of one coordinate. The answer interpolates the
/// order statistics with ranks k0 and k1 among the kept draws.
struct Query {
    std::size_t coord = 0;
    std::size_t k0 = 0;
    std::size_t k1 = 0;
    double frac = 0.0;
    Mode mode = Mode::Range;
    double lo = 0.0;
    double hi = 0.0;
    double result = 0.0;
};

/// Stores the first P kept draws coordinate-major in a shared buffer;
/// workers write disjoint slots.
struct PilotAcc {
    std::vector<double>* buffer;
    std::size_t first;
    std::size_t count;

    void visit(std::size_t d, std::span<const double> beta) {
        const std::size_t slot = d - first;
        for (std::size_t i = 0; i < beta.size(); ++i) (*buffer)[i * count + slot] = beta[i];
    }
};

struct SelectionAcc {
    const std::vector<Query>* queries;
    const std::vector<std::vector<std::size_t>>* by_coord;
    std::vector<std::uint64_t> below;
    std::vector<std::uint64_t> inside;
    std::vector<double> min;
    std::vector<double> max;
    std::vector<std::uint32_t> hist;
    std::vector<std::vector<double>> collected;

    SelectionAcc(const std::vector<Query>& q, const std::vector<std::vector<std::size_t>>& idx)
        : queries(&q), by_coord(&idx), below(q.size(), 0), inside(q.size(), 0),
          min(q.size(), std::numeric_limits<double>::infinity()),
          max(q.size(), -std::numeric_limits<double>::infinity()),
          collected(q.size()) {
        const bool any_hist = std::any_of(q.begin(), q.end(),
                                          [](const Query& x) { return x.mode == Mode::Histogram; });
        if (any_hist) hist.assign(q.size() * kBins, 0);
    }

    void visit(std::size_t, std::span<const double> beta) {
        const auto& qs = *queries;
        for (std::size_t i = 0; i < beta.size(); ++i) {
            const double v = beta[i];
            for (std::size_t qi : (*by_coord)[i]) {
                const Query& q = qs[qi];
                switch (q.mode) {
                case Mode::Range:
                    min[qi] = std::min(min[qi], v);
                    max[qi] = std::max(max[qi], v);
                    break;
                case Mode::Histogram:
                    if (v < q.lo) {
                        ++below[qi];
                    } else if (v <= q.hi) {
                        ++inside[qi];
                        auto bin = static_cast<std::size_t>((v - q.lo) / (q.hi - q.lo) *
                                                            static_cast<double>(kBins));
                        ++hist[qi * kBins + std::min(bin, kBins - 1)];
                    }
                    break;
                case Mode::Collect:
                    if (v < q.lo) {
                        ++below[qi];
                    } else if (v <= q.hi) {
                        collected[qi].push_back(v);
                    }
                    break;
                case Mode::Done:
                    break;
                }
            }
        }
    }

    void merge(const SelectionAcc& o) {
        for (std::size_t q = 0; q < below.size(); ++q) {
            below[q] += o.below[q];
            inside[q] += o.inside[q];
            min[q] = std::min(min[q], o.min[q]);
            max[q] = std::max(max[q], o.max[q]);
            collected[q].insert(collected[q].end(), o.collected[q].begin(), o.collected[q].end());
        }
        for (std::size_t k = 0; k < hist.size(); ++k) hist[k] += o.hist[k];
    }
};

double interpolate(double a, double b, double frac) { return a + frac * (b - a); }

/// Exact per-coordinate percentiles of the kept draws.
struct PercentileSelection {
    std::vector<std::vector<double>> values;  // [level][coord]
    std::size_t passes = 0;
};

PercentileSelection select_percentiles(const DrawGenerator& gen, std::size_t m,
                                       std::size_t burn_in, std::size_t total,
                                       std::span<const double> levels, unsigned threads) {
    const std::size_t kept = total - burn_in;
    PercentileSelection out;
    out.values.assign(levels.size(), std::vector<double>(m, 0.0));

    std::vector<Query> queries;
    std::vector<std::vector<std::size_t>> by_coord(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (double q : levels) {
            const double r = q * static_cast<double>(kept - 1);
            Query query;
            query.coord = i;
            query.k0 = static_cast<std::size_t>(std::floor(r));
            query.k1 = static_cast<std::size_t>(std::ceil(r));
            query.frac = r - static_cast<double>(query.k0);
            by_coord[i].push_back(queries.size());
            queries.push_back(query);
        }
    }

    // Pilot pass over a prefix of the kept draws. When everything fits in
    // memory the pilot is the whole sample and the answer is immediate.
    std::size_t pilot = kept;
    if (kept * m > kMemoryBudget) {
        pilot = std::min(kMemoryBudget / m, kept / 8);
        pilot = std::max(pilot, std::min<std::size_t>(kept, 64));
    }
    std::vector<double> buffer(pilot * m);
    run_pass<PilotAcc>(gen, m, burn_in, burn_in + pilot, threads,
                       [&] { return PilotAcc{&buffer, burn_in, pilot}; });
    ++out.passes;

    const std::size_t per_query_cap =
        std::max<std::size_t>(64, kMemoryBudget / std::max<std::size_t>(1, queries.size()));
    for (std::size_t i = 0; i < m; ++i) {
        auto col = std::span<double>(buffer).subspan(i * pilot, pilot);
        std::sort(col.begin(), col.end());
        for (std::size_t qi : by_coord[i]) {
            Query& q = queries[qi];
            if (pilot == kept) {
                q.result = interpolate(col[q.k0], col[q.k1], q.frac);
                q.mode = Mode::Done;
                continue;
            }
            const double level = levels[qi - by_coord[i].front()];
            const double centre = level * static_cast<double>(pilot - 1);
            const double margin =
                kPilotSigmas * std::sqrt(static_cast<double>(pilot) * level * (1.0 - level)) + 2.0;
            const auto lo_idx = static_cast<std::size_t>(std::max(0.0, std::floor(centre - margin)));
            const auto hi_idx = static_cast<std::size_t>(
                std::min(static_cast<double>(pilot - 1), std::ceil(centre + margin)));
            q.lo = col[lo_idx];
            q.hi = col[hi_idx];
            const double expected = static_cast<double>(kept) *
                                    static_cast<double>(hi_idx - lo_idx + 1) /
                                    static_cast<double>(pilot);
            q.mode = (expected <= static_cast<double>(per_query_cap) || !(q.hi > q.lo))
                         ? Mode::Collect
                         : Mode::Histogram;
        }
    }

    auto pending = [&] {
        return std::any_of(queries.begin(), queries.end(),
                           [](const Query& q) { return q.mode != Mode::Done; });
    };

    while (pending()) {
        if (out.passes >= kMaxPasses) {
            throw Error("credible_band: percentile selection did not settle");
        }
        auto accs = run_pass<SelectionAcc>(gen, m, burn_in, total, threads,
                                           [&] { return SelectionAcc(queries, by_coord); });
        ++out.passes;
        SelectionAcc& acc = accs.front();
        for (std::size_t w = 1; w < accs.size(); ++w) acc.merge(accs[w]);

        for (std::size_t qi = 0; qi < queries.size(); ++qi) {
            Query& q = queries[qi];
            switch (q.mode) {
            case Mode::Range:
                q.lo = acc.min[qi];
                q.hi = acc.max[qi];
                q.mode = (kept <= per_query_cap || !(q.hi > q.lo)) ? Mode::Collect
                                                                    : Mode::Histogram;
                break;
            case Mode::Histogram: {
                const std::uint64_t below = acc.below[qi];
                if (below > q.k0 || q.k1 >= below + acc.inside[qi]) {
                    q.mode = Mode::Range;
                    break;
                }
                const std::uint32_t* h = acc.hist.data() + qi * kBins;
                std::uint64_t cum = below;
                std::size_t b0 = kBins, b1 = kBins;
                for (std::size_t b = 0; b < kBins; ++b) {
                    cum += h[b];
                    if (b0 == kBins && cum > q.k0) b0 = b;
                    if (cum > q.k1) {
                        b1 = b;
                        break;
                    }
                }
                // One guard bin on each side absorbs rounding in the bin map.
                b0 = b0 > 0 ? b0 - 1 : 0;
                b1 = std::min(b1 + 1, kBins - 1);
                std::uint64_t expected = 0;
                for (std::size_t b = b0; b <= b1; ++b) expected += h[b];
                const double span = q.hi - q.lo;
                const double new_lo = b0 == 0 ? q.lo : q.lo + span * static_cast<double>(b0) / kBins;
                const double new_hi =
                    b1 == kBins - 1 ? q.hi : q.lo + span * static_cast<double>(b1 + 1) / kBins;
                q.lo = new_lo;
                q.hi = new_hi;
                q.mode = (expected <= per_query_cap || !(q.hi > q.lo)) ? Mode::Collect
                                                                       : Mode::Histogram;
                break;
            }
            case Mode::Collect: {
                const std::uint64_t below = acc.below[qi];
                auto& vals = acc.collected[qi];
                if (below > q.k0 || q.k1 >= below + vals.size()) {
                    q.mode = Mode::Range;
                    break;
                }
                std::sort(vals.begin(), vals.end());
                q.result = interpolate(vals[q.k0 - below], vals[q.k1 - below], q.frac);
                q.mode = Mode::Done;
                break;
            }
            case Mode::Done:
                break;
            }
        }
    }

    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t l = 0; l < by_coord[i].size(); ++l) {
            out.values[l][i] = queries[by_coord[i][l]].result;
        }
    }
    return out;
}

}  // namespace

void RegressionProblem::validate() const {
    if (y.empty()) throw DimensionError("RegressionProblem: empty right-hand side");
    if (x.n() != y.size()) {
        throw DimensionError("RegressionProblem: X is " + std::to_string(x.n()) +
                             " x " + std::to_string(x.n()) + " but Y has length " +
                             std::to_string(y.size()));
    }
}

void PosteriorConfig::validate() const {
    if (burn_in >= draws) {
        throw DomainError("PosteriorConfig: burn_in (" + std::to_string(burn_in) +
                          ") must be smaller than draws (" + std::to_string(draws) + ")");
    }
    if (!(q_low > 0.0 && q_low < q_high && q_high < 1.0)) {
        throw DomainError("PosteriorConfig: need 0 < q_low < q_high < 1");
    }
    if (a && !(*a > 0.0)) throw DomainError("PosteriorConfig: shape a must be positive");
    if (b && !(*b > 0.0)) throw DomainError("PosteriorConfig: scale b must be positive");
    if (clamp && !(clamp->lo <= clamp->hi)) {
        throw DomainError("PosteriorConfig: clamp range is empty");
    }
}

double PosteriorConfig::shape_for(std::size_t m) const {
    return a.value_or(static_cast<double>(m) / 2.0);
}

double PosteriorConfig::scale_for(std::size_t m) const {
    return b.value_or(shape_for(m) + 1.0);
}

std::vector<double> posterior_mean(const RegressionProblem& p) {
    p.validate();
    if (p.x.kl() <= 1 && p.x.ku() <= 1) return thomas_solve(p.x, p.y);
    // Wider bands: normal equations route.
    const auto factor = banded_cholesky(normal_equations(p.x));
    std::vector<double> xty(p.m(), 0.0);
    for (std::size_t i = 0; i < p.m(); ++i) {
        const std::size_t r0 = i > p.x.ku() ? i - p.x.ku() : 0;
        const std::size_t r1 = std::min(p.m() - 1, i + p.x.kl());
        for (std::size_t r = r0; r <= r1; ++r) xty[i] += p.x(r, i) * p.y[r];
    }
    return cholesky_solve(factor, xty);
}

PosteriorBand credible_band(const RegressionProblem& p, const PosteriorConfig& cfg,
                            const Rng& rng) {
    p.validate();
    cfg.validate();
    const std::size_t m = p.m();

    PosteriorBand band;
    band.config = cfg;
    band.a = cfg.shape_for(m);
    band.b = cfg.scale_for(m);
    band.kept_draws = cfg.draws - cfg.burn_in;
    band.mean = posterior_mean(p);

    const auto factor = normal_equations_factor(p.x);
    const DrawGenerator gen(factor, band.mean, band.a, band.b, cfg.draws, rng);
    const unsigned threads =
        cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    const double levels[] = {cfg.q_low, cfg.q_high};
    auto sel = select_percentiles(gen, m, cfg.burn_in, cfg.draws, levels, threads);
    band.sampling_passes = sel.passes;

    band.lower = std::move(sel.values[0]);
    band.upper = std::move(sel.values[1]);
    if (cfg.clamp) {
        for (std::size_t i = 0; i < m; ++i) {
            band.lower[i] = std::clamp(band.lower[i], cfg.clamp->lo, cfg.clamp->hi);
            band.upper[i] = std::clamp(band.upper[i], cfg.clamp->lo, cfg.clamp->hi);
        }
    }
    band.width.resize(m);
    band.scaled_width.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        band.width[i] = band.upper[i] - band.lower[i];
        band.scaled_width[i] = band.width[i] / (2.0 * 1.96);
    }
    return band;
}

PosteriorBand credible_band(const RegressionProblem& p, const PosteriorConfig& cfg) {
    return credible_band(p, cfg, Rng(cfg.seed));
}

PosteriorBand identity_diagnostic(std::span<const double> theta_hat,
                                  const PosteriorConfig& cfg, const Rng& rng) {
    if (theta_hat.empty()) throw DimensionError("identity_diagnostic: empty input");
    RegressionProblem p{BandedMatrix::identity(theta_hat.size()),
                        std::vector<double>(theta_hat.begin(), theta_hat.end())};
    return credible_band(p, cfg, rng);
}

}  // namespace fdci
