#ifndef CYCLESCOPE_SUBSAMPLING_HPP
#define CYCLESCOPE_SUBSAMPLING_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclescope/parallel.hpp"
#include "cyclescope/spectral.hpp"

namespace cyclescope {

enum class SubsampleMode {
    uncentered,  ///< sqrt(b)|r_hat^{t-1,b}(psi)|; drives the null test
    centered     ///< sqrt(b)(|r_hat^{t-1,b}(psi)| - |r_hat_n(psi)|); drives confidence intervals
};

/// Empirical subsampling distribution of the block statistic at one frequency:
/// one entry per length-b window, sorted ascending.
struct SubsampleDistribution {
    std::vector<double> stats;  ///< sorted, length q = n - b + 1
    std::size_t n = 0;
    std::size_t b = 0;
    double psi = 0.0;
    SubsampleMode mode = SubsampleMode::uncentered;

    std::size_t window_count() const { return stats.size(); }

    /// Empirical CDF at x (right-continuous step function).
    double cdf(double x) const {
        const auto it = std::upper_bound(stats.begin(), stats.end(), x);
        return static_cast<double>(it - stats.begin()) / static_cast<double>(stats.size());
    }
};

/// The block-length rule b = 2.5*sqrt(n), rounded to nearest and clamped to [4, n-1].
inline std::size_t default_block_length(std::size_t n) {
    if (n < 16) {
        throw std::invalid_argument("default_block_length needs n >= 16, got " + std::to_string(n));
    }
    long b = std::lround(2.5 * std::sqrt(static_cast<double>(n)));
    b = std::max<long>(b, 4);
    b = std::min<long>(b, static_cast<long>(n) - 1);
    return static_cast<std::size_t>(b);
}

/// Block statistics sqrt(b)|r_hat^{t-1,b}(psi)| for every window t = 1..n-b+1.
/// Each window coefficient is demeaned by the full-path mean and indexed by
/// absolute positions, so windows are comparable with the full-path statistic.
/// Uses a rolling complex window sum; one pass over the path.
inline SubsampleDistribution subsample_distribution(std::span<const double> values, std::size_t b,
                                                    double psi, SubsampleMode mode) {
    const std::size_t n = values.size();
    if (b < 1 || b >= n) {
        throw std::invalid_argument("block length b = " + std::to_string(b) +
                                    " out of range [1, n-1] for n = " + std::to_string(n));
    }
    const double mean = full_path_mean(values);

    std::vector<std::complex<double>> terms(n);
    for (std::size_t j = 1; j <= n; ++j) {
        terms[j - 1] = (values[j - 1] - mean) * std::polar(1.0, -psi * static_cast<double>(j));
    }

    const std::size_t q = n - b + 1;
    const double root_b = std::sqrt(static_cast<double>(b));
    SubsampleDistribution dist;
    dist.stats.resize(q);
    dist.n = n;
    dist.b = b;
    dist.psi = psi;
    dist.mode = mode;

    std::complex<double> window(0.0, 0.0);
    for (std::size_t j = 0; j < b; ++j) window += terms[j];
    dist.stats[0] = root_b * std::abs(window) / static_cast<double>(b);
    for (std::size_t t = 1; t < q; ++t) {
        window += terms[t + b - 1] - terms[t - 1];
        dist.stats[t] = root_b * std::abs(window) / static_cast<double>(b);
    }

    if (mode == SubsampleMode::centered) {
        const double anchor = std::abs(demeaned_coeff(values, 0, n, psi));
        for (double& s : dist.stats) s -= root_b * anchor;
    }
    std::sort(dist.stats.begin(), dist.stats.end());
    return dist;
}

/// Smallest value whose empirical CDF reaches the confidence level gamma;
/// the ceil(gamma*q)-th order statistic, always an element of stats.
inline double critical_value(const SubsampleDistribution& dist, double gamma) {
    if (dist.stats.empty()) {
        throw std::invalid_argument("critical_value on empty distribution");
    }
    if (!(gamma > 0.0) || !(gamma < 1.0)) {
        throw std::invalid_argument("confidence level must be in (0,1), got " + std::to_string(gamma));
    }
    const std::size_t q = dist.stats.size();
    const std::size_t rank = static_cast<std::size_t>(
        std::ceil(gamma * static_cast<double>(q) - 1e-12));  // 1-based order statistic
    const std::size_t idx = std::min(std::max<std::size_t>(rank, 1), q) - 1;
    return dist.stats[idx];
}

/// Per-frequency scan over a grid: statistic, per-level critical values and
/// rejection flags (strict inequality, so a degenerate all-zero path never rejects).
struct SignificanceScan {
    FrequencyGrid grid;
    std::size_t b = 0;
    std::vector<double> gammas;                    ///< confidence levels, ascending
    std::vector<double> statistic;                 ///< per grid point
    std::vector<std::vector<double>> critical;     ///< [gamma index][grid index]
    std::vector<std::vector<char>> flags;          ///< [gamma index][grid index]

    std::size_t gamma_index(double gamma) const {
        for (std::size_t i = 0; i < gammas.size(); ++i) {
            if (gammas[i] == gamma) return i;
        }
        throw std::invalid_argument("confidence level " + std::to_string(gamma) +
                                    " was not part of the scan");
    }
};

/// Runs the uncentered test at every grid frequency. Grid points are
/// independent; they are evaluated concurrently and merged by index.
inline SignificanceScan scan(std::span<const double> values, const FrequencyGrid& grid,
                             std::size_t b, std::vector<double> gammas) {
    if (grid.empty()) {
        throw std::invalid_argument("scan grid is empty");
    }
    std::sort(gammas.begin(), gammas.end());
    SignificanceScan out;
    out.grid = grid;
    out.b = b;
    out.gammas = gammas;
    const std::size_t m = grid.size();
    out.statistic.resize(m);
    out.critical.assign(gammas.size(), std::vector<double>(m));
    out.flags.assign(gammas.size(), std::vector<char>(m));

    parallel_for_index(m, [&](std::size_t i) {
        const double psi = grid.points[i];
        out.statistic[i] = scan_statistic(values, psi);
        const SubsampleDistribution dist =
            subsample_distribution(values, b, psi, SubsampleMode::uncentered);
        for (std::size_t g = 0; g < out.gammas.size(); ++g) {
            out.critical[g][i] = critical_value(dist, out.gammas[g]);
            out.flags[g][i] = out.statistic[i] > out.critical[g][i] ? 1 : 0;
        }
    });
    return out;
}

/// One-sided confidence interval for |m(psi)|:
///   [ |r_hat_n(psi)| - c_tilde/sqrt(n), +inf ) intersected with [0, +inf),
/// with c_tilde the centered-distribution critical value at level gamma.
struct ConfidenceInterval {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double x) const { return x >= lo && x <= hi; }
};

inline ConfidenceInterval confidence_interval(std::span<const double> values, std::size_t b,
                                              double psi, double gamma) {
    const std::size_t n = values.size();
    const SubsampleDistribution dist =
        subsample_distribution(values, b, psi, SubsampleMode::centered);
    const double c = critical_value(dist, gamma);
    const double anchor = std::abs(demeaned_coeff(values, 0, n, psi));
    ConfidenceInterval ci;
    ci.lo = std::max(0.0, anchor - c / std::sqrt(static_cast<double>(n)));
    return ci;
}

}  // namespace cyclescope

#endif
