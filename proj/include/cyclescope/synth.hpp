#ifndef CYCLESCOPE_SYNTH_HPP
#define CYCLESCOPE_SYNTH_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclescope/parallel.hpp"
#include "cyclescope/pipeline.hpp"
#include "cyclescope/rng.hpp"
#include "cyclescope/series.hpp"
#include "cyclescope/subsampling.hpp"

namespace cyclescope {

/// One cyclical mean component a*cos(psi t) + b*sin(psi t); its Fourier
/// coefficient at psi is (a - i b)/2.
struct Harmonic {
    double psi = 0.0;
    double a = 0.0;
    double b = 0.0;

    std::complex<double> coeff() const { return {a / 2.0, -b / 2.0}; }
};

/// Seasonal mean component c*cos(2 pi k t / 12 + phase), k in 1..11.
struct SeasonalTerm {
    int k = 1;
    double c = 0.0;
    double phase = 0.0;
};

/// Ground-truth generator: polynomial trend + harmonics + seasonal mean plus
/// AR(1) noise with optional month-of-year volatility multipliers, which make
/// the autocovariance periodic (genuinely almost periodically correlated, not
/// just in mean).
struct SyntheticSpec {
    std::vector<double> trend;          ///< beta_0..beta_p
    std::vector<Harmonic> harmonics;
    std::vector<SeasonalTerm> seasonal;
    double ar1 = 0.0;                   ///< AR(1) coefficient, |ar1| < 1
    double sigma = 0.0;                 ///< innovation scale
    std::vector<double> volatility;     ///< s_1..s_12 (> 0); empty means all ones
    std::uint64_t seed = 1;

    void validate() const {
        for (const Harmonic& h : harmonics) {
            if (!(h.psi > 0.0) || !(h.psi < std::numbers::pi)) {
                throw std::invalid_argument("harmonic frequency must lie in (0, pi)");
            }
        }
        for (const SeasonalTerm& s : seasonal) {
            if (s.k < 1 || s.k > 11) {
                throw std::invalid_argument("seasonal index k must lie in 1..11");
            }
        }
        if (!(std::fabs(ar1) < 1.0)) {
            throw std::invalid_argument("AR(1) coefficient must satisfy |phi| < 1");
        }
        if (sigma < 0.0) {
            throw std::invalid_argument("noise scale must be nonnegative");
        }
        if (!volatility.empty() && volatility.size() != 12) {
            throw std::invalid_argument("volatility multipliers must have exactly 12 entries");
        }
        for (double s : volatility) {
            if (!(s > 0.0)) throw std::invalid_argument("volatility multipliers must be positive");
        }
    }

    /// Deterministic mean value at time t (the function the pipeline estimates).
    double mean_at(long t) const {
        double v = 0.0;
        double tp = 1.0;
        for (double beta : trend) {
            v += beta * tp;
            tp *= static_cast<double>(t);
        }
        for (const Harmonic& h : harmonics) {
            v += h.a * std::cos(h.psi * t) + h.b * std::sin(h.psi * t);
        }
        for (const SeasonalTerm& s : seasonal) {
            v += s.c * std::cos(2.0 * std::numbers::pi * s.k * t / 12.0 + s.phase);
        }
        return v;
    }

    /// True Fourier coefficient of the mean at psi: (a - i b)/2 when psi is a
    /// harmonic frequency, zero otherwise.
    std::complex<double> true_coeff(double psi) const {
        for (const Harmonic& h : harmonics) {
            if (h.psi == psi) return h.coeff();
        }
        return {0.0, 0.0};
    }
};

/// Draws the series: mean_at(t) + eta_t with
///   eta_t = phi*eta_{t-1} + sigma*s_{(t mod 12)+1}*z_t
/// and a 200-sample burn-in before t = 1 so eta starts effectively
/// stationary. z_t come from the counter-based stream, so the draw at time t
/// is a pure function of (seed, t).
inline MonthlySeries generate(const SyntheticSpec& spec, std::size_t n, YearMonth start,
                              std::string label = "synthetic") {
    spec.validate();
    if (n < 1) {
        throw std::invalid_argument("generate needs n >= 1");
    }
    const CounterRng rng(spec.seed);
    const long burnin = 200;

    auto vol_at = [&](long t) {
        if (spec.volatility.empty()) return 1.0;
        const long idx = ((t % 12) + 12) % 12;  // s_{(t mod 12)+1}
        return spec.volatility[static_cast<std::size_t>(idx)];
    };

    double eta = 0.0;
    std::uint64_t counter = 0;
    for (long t = 1 - burnin; t <= 0; ++t) {
        eta = spec.ar1 * eta + spec.sigma * vol_at(t) * rng.normal(counter++);
    }
    std::vector<double> values(n);
    for (long t = 1; t <= static_cast<long>(n); ++t) {
        eta = spec.ar1 * eta + spec.sigma * vol_at(t) * rng.normal(counter++);
        values[static_cast<std::size_t>(t - 1)] = spec.mean_at(t) + eta;
    }
    return MonthlySeries(start, std::move(values), std::move(label));
}

/// Per-frequency tallies from a Monte Carlo run.
struct MonteCarloTarget {
    double psi = 0.0;
    double true_abs_coeff = 0.0;
    std::size_t rejections = 0;     ///< scan statistic exceeded its critical value
    std::size_t coverages = 0;      ///< confidence interval contained the true |m|
    std::size_t interval_hits = 0;  ///< a detected interval contained psi (when scanned)
    std::size_t replications = 0;

    double rejection_rate() const { return ratio(rejections); }
    double coverage_rate() const { return ratio(coverages); }
    double interval_hit_rate() const { return ratio(interval_hits); }

    /// Binomial standard error of an empirical rate at nominal level p0.
    double binomial_se(double p0) const {
        return std::sqrt(p0 * (1.0 - p0) / static_cast<double>(replications));
    }

private:
    double ratio(std::size_t k) const {
        return static_cast<double>(k) / static_cast<double>(replications);
    }
};

struct MonteCarloResult {
    std::vector<MonteCarloTarget> targets;
    std::size_t replications = 0;
    std::size_t block_length = 0;
};

/// Size/power/coverage simulation: for every replication, draws a fresh path
/// with a derived seed, then tests each target frequency (point rejection at
/// level gamma, one-sided CI coverage of the true |m|) and, when
/// `with_interval_scan`, runs the full grid scan and records whether a
/// detected interval contains the target. Replications run concurrently and
/// are merged in replication order.
inline MonteCarloResult monte_carlo(const SyntheticSpec& spec, std::size_t n,
                                    std::size_t replications, double gamma,
                                    const std::vector<double>& targets,
                                    bool with_interval_scan = false,
                                    const FrequencyGrid& grid = FrequencyGrid::default_grid()) {
    spec.validate();
    if (replications < 50) {
        throw std::invalid_argument("monte_carlo needs at least 50 replications");
    }
    if (targets.empty()) {
        throw std::invalid_argument("monte_carlo needs at least one target frequency");
    }
    const std::size_t b = default_block_length(n);

    struct RepOutcome {
        std::vector<char> rejected;
        std::vector<char> covered;
        std::vector<char> interval_hit;
    };
    std::vector<RepOutcome> outcomes(replications);

    parallel_for_index(replications, [&](std::size_t r) {
        SyntheticSpec local = spec;
        local.seed = derive_seed(spec.seed, r);
        const MonthlySeries path = generate(local, n, YearMonth{2000, 1});
        const std::vector<double>& x = path.values();

        RepOutcome& out = outcomes[r];
        out.rejected.resize(targets.size());
        out.covered.resize(targets.size());
        out.interval_hit.assign(targets.size(), 0);

        std::vector<FrequencyInterval> bands;
        if (with_interval_scan) {
            bands = detect_intervals(scan(x, grid, b, {gamma}), gamma);
        }
        for (std::size_t k = 0; k < targets.size(); ++k) {
            const double psi = targets[k];
            const double stat = scan_statistic(x, psi);
            const double crit = critical_value(
                subsample_distribution(x, b, psi, SubsampleMode::uncentered), gamma);
            out.rejected[k] = stat > crit ? 1 : 0;

            const double truth = std::abs(spec.true_coeff(psi));
            out.covered[k] = confidence_interval(x, b, psi, gamma).contains(truth) ? 1 : 0;

            for (const FrequencyInterval& band : bands) {
                if (band.contains(psi)) {
                    out.interval_hit[k] = 1;
                    break;
                }
            }
        }
    });

    MonteCarloResult result;
    result.replications = replications;
    result.block_length = b;
    result.targets.resize(targets.size());
    for (std::size_t k = 0; k < targets.size(); ++k) {
        MonteCarloTarget& t = result.targets[k];
        t.psi = targets[k];
        t.true_abs_coeff = std::abs(spec.true_coeff(targets[k]));
        t.replications = replications;
        for (std::size_t r = 0; r < replications; ++r) {
            t.rejections += outcomes[r].rejected[k];
            t.coverages += outcomes[r].covered[k];
            t.interval_hits += outcomes[r].interval_hit[k];
        }
    }
    return result;
}

}  // namespace cyclescope

#endif
