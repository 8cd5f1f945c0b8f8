#ifndef CYCLESCOPE_ORACLES_HPP
#define CYCLESCOPE_ORACLES_HPP

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclescope/subsampling.hpp"

namespace cyclescope::oracle {

/// |r_hat^{c,d}(psi)| by literal summation: its own mean loop, a fresh
/// exponential per term, no shared accumulators. Shares nothing with the
/// spectral module.
inline double subsample_window_abs(std::span<const double> values, std::size_t c, std::size_t d,
                                   double psi) {
    if (d < 1 || c + d > values.size()) {
        throw std::invalid_argument("oracle window out of range");
    }
    double mean = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) mean += values[i];
    mean /= static_cast<double>(values.size());

    double re = 0.0;
    double im = 0.0;
    for (std::size_t j = c + 1; j <= c + d; ++j) {
        const double arg = -psi * static_cast<double>(j);
        re += (values[j - 1] - mean) * std::cos(arg);
        im += (values[j - 1] - mean) * std::sin(arg);
    }
    re /= static_cast<double>(d);
    im /= static_cast<double>(d);
    return std::sqrt(re * re + im * im);
}

/// Brute-force enumeration of the block statistics, one fresh O(b) summation
/// per window; intentionally O(q*b) and unsorted.
inline std::vector<double> subsample_stats(std::span<const double> values, std::size_t b,
                                           double psi, SubsampleMode mode) {
    const std::size_t n = values.size();
    if (b < 1 || b >= n) {
        throw std::invalid_argument("oracle block length out of range");
    }
    const double root_b = std::sqrt(static_cast<double>(b));
    const double anchor =
        (mode == SubsampleMode::centered) ? subsample_window_abs(values, 0, n, psi) : 0.0;
    std::vector<double> stats;
    stats.reserve(n - b + 1);
    for (std::size_t t = 1; t + b - 1 <= n; ++t) {
        const double w = subsample_window_abs(values, t - 1, b, psi);
        stats.push_back(mode == SubsampleMode::centered ? root_b * (w - anchor) : root_b * w);
    }
    return stats;
}

/// Literal indicator-sum subsampling CDF at x, no sorting.
inline double subsample_cdf(std::span<const double> values, std::size_t b, double psi,
                            SubsampleMode mode, double x) {
    const std::vector<double> stats = subsample_stats(values, b, psi, mode);
    std::size_t hits = 0;
    for (double s : stats) {
        if (s <= x) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(stats.size());
}

/// Dense reference HP trend: assembles (I + lambda D'D) as a full matrix from
/// an explicit D and solves by Gaussian elimination with partial pivoting.
/// Independent of the banded path; O(n^3).
inline std::vector<double> hp_dense_trend(const std::vector<double>& x, double lambda) {
    const std::size_t n = x.size();
    if (n < 4) {
        throw std::invalid_argument("dense HP oracle needs n >= 4");
    }
    std::vector<std::vector<double>> d(n - 2, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i + 2 < n; ++i) {
        d[i][i] = 1.0;
        d[i][i + 1] = -2.0;
        d[i][i + 2] = 1.0;
    }
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i + 2 < n; ++i) s += d[i][j] * d[i][k];
            a[j][k] = lambda * s + (j == k ? 1.0 : 0.0);
        }
    }

    std::vector<double> rhs = x;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        }
        if (a[piv][col] == 0.0) {
            throw std::runtime_error("dense HP oracle: singular system");
        }
        std::swap(a[piv], a[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<double> trend(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = n - 1 - k;
        double s = rhs[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * trend[j];
        trend[i] = s / a[i][i];
    }
    return trend;
}

}  // namespace cyclescope::oracle

#endif
