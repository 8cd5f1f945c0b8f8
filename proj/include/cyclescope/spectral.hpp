#ifndef CYCLESCOPE_SPECTRAL_HPP
#define CYCLESCOPE_SPECTRAL_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclescope/filter.hpp"

namespace cyclescope {

/// Upper edge of the business-cycle band in radians/month: cycles longer
/// than ~17 months.
inline constexpr double kBandHi = 0.35;

/// Default scan resolution, pi/720 radians/month.
inline constexpr double kDefaultGridStep = std::numbers::pi / 720.0;

/// Strictly increasing scan frequencies, all inside (0, hi).
struct FrequencyGrid {
    std::vector<double> points;

    /// Multiples of `step` strictly inside (0, hi).
    static FrequencyGrid regular(double step, double hi) {
        if (!(step > 0.0) || !(hi > step)) {
            throw std::invalid_argument("frequency grid needs 0 < step < hi");
        }
        FrequencyGrid g;
        for (long k = 1; k * step < hi; ++k) g.points.push_back(k * step);
        return g;
    }

    /// The scan set {k*pi/720 : k >= 1} inside (0, 0.35).
    static FrequencyGrid default_grid() { return regular(kDefaultGridStep, kBandHi); }

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
    double step() const { return points.size() >= 2 ? points[1] - points[0] : kDefaultGridStep; }
};

/// Cycle length implied by an angular frequency in radians/month.
struct CyclePeriod {
    double months;
    double years;
};

inline CyclePeriod period_of(double psi) {
    if (!(psi > 0.0)) {
        throw std::invalid_argument("period_of requires psi > 0, got " + std::to_string(psi));
    }
    const double months = 2.0 * std::numbers::pi / psi;
    return CyclePeriod{months, months / 12.0};
}

/// Windowed Fourier coefficient of the sample path,
///   m_hat(psi) = (1/d) * sum_{j=c+1..c+d} x_j e^{-i psi j},
/// with j the absolute 1-based position, not the window-relative one.
/// Direct summation at any real psi; no FFT shortcut.
inline std::complex<double> fourier_coeff(std::span<const double> values, std::size_t c,
                                          std::size_t d, double psi) {
    if (d < 1 || c + d > values.size()) {
        throw std::invalid_argument("fourier window [" + std::to_string(c + 1) + ", " +
                                    std::to_string(c + d) + "] exceeds series of length " +
                                    std::to_string(values.size()));
    }
    std::complex<double> sum(0.0, 0.0);
    for (std::size_t j = c + 1; j <= c + d; ++j) {
        sum += values[j - 1] * std::polar(1.0, -psi * static_cast<double>(j));
    }
    return sum / static_cast<double>(d);
}

inline double full_path_mean(std::span<const double> values) {
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

/// Demeaned coefficient r_hat(psi): the windowed coefficient of the path with
/// the FULL-path mean removed, even when (c, d) selects a subwindow.
inline std::complex<double> demeaned_coeff(std::span<const double> values, std::size_t c,
                                           std::size_t d, double psi) {
    if (d < 1 || c + d > values.size()) {
        throw std::invalid_argument("fourier window [" + std::to_string(c + 1) + ", " +
                                    std::to_string(c + d) + "] exceeds series of length " +
                                    std::to_string(values.size()));
    }
    const double mean = full_path_mean(values);
    std::complex<double> sum(0.0, 0.0);
    for (std::size_t j = c + 1; j <= c + d; ++j) {
        sum += (values[j - 1] - mean) * std::polar(1.0, -psi * static_cast<double>(j));
    }
    return sum / static_cast<double>(d);
}

/// Test statistic sqrt(n) * |r_hat_n(psi)| over the full path.
inline double scan_statistic(std::span<const double> values, double psi) {
    if (values.size() < 2) {
        throw std::invalid_argument("scan_statistic needs n >= 2");
    }
    const std::size_t n = values.size();
    return std::sqrt(static_cast<double>(n)) * std::abs(demeaned_coeff(values, 0, n, psi));
}

/// Which coefficient enters the argmax of refine_frequency.
enum class RefineObjective {
    demeaned,  ///< sqrt(n)|r_hat(psi)|; immune to the psi->0 leakage of a nonzero mean
    raw        ///< sqrt(n)|m_hat(psi)|
};

struct RefinedFrequency {
    double psi;
    std::complex<double> coeff;  ///< demeaned (or raw) coefficient at psi
};

namespace detail {

inline double refine_objective(std::span<const double> values, double psi, RefineObjective obj) {
    const std::size_t n = values.size();
    const std::complex<double> m = (obj == RefineObjective::demeaned)
                                       ? demeaned_coeff(values, 0, n, psi)
                                       : fourier_coeff(values, 0, n, psi);
    return std::sqrt(static_cast<double>(n)) * std::abs(m);
}

}  // namespace detail

/// Locates the maximizer of the scan statistic over [lo, hi]: dense sub-grid
/// search at step (hi-lo)/1000 followed by golden-section polish to 1e-8 rad.
/// Ties break toward smaller psi.
inline RefinedFrequency refine_frequency(std::span<const double> values, double lo, double hi,
                                         RefineObjective objective = RefineObjective::demeaned) {
    if (!(lo > 0.0) || !(hi > lo) || hi > kBandHi + 1e-12) {
        throw std::invalid_argument("refine interval must satisfy 0 < lo < hi <= 0.35");
    }
    const int kGridPoints = 1000;
    const double step = (hi - lo) / kGridPoints;

    auto f = [&](double psi) { return detail::refine_objective(values, psi, objective); };

    double best_psi = lo;
    double best_val = f(lo);
    int best_k = 0;
    for (int k = 1; k <= kGridPoints; ++k) {
        const double psi = lo + k * step;
        const double v = f(psi);
        if (v > best_val) {
            best_val = v;
            best_psi = psi;
            best_k = k;
        }
    }

    // Golden-section polish inside the bracket around the grid winner.
    double a = (best_k == 0) ? lo : lo + (best_k - 1) * step;
    double b = (best_k == kGridPoints) ? hi : lo + (best_k + 1) * step;
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > 1e-8) {
        if (f1 >= f2) {  // prefer smaller psi on ties
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        }
        const double xc = (f1 >= f2) ? x1 : x2;
        const double fc = (f1 >= f2) ? f1 : f2;
        if (fc > best_val || (fc == best_val && xc < best_psi)) {
            best_val = fc;
            best_psi = xc;
        }
    }

    const std::size_t n = values.size();
    const std::complex<double> coeff = (objective == RefineObjective::demeaned)
                                           ? demeaned_coeff(values, 0, n, best_psi)
                                           : fourier_coeff(values, 0, n, best_psi);
    return RefinedFrequency{best_psi, coeff};
}

/// Divides the filtered-series coefficient by the composite transfer to back
/// out the coefficient of the original series (the transfer relation under
/// linear filtering, inverted).
inline std::complex<double> backout_coefficient(std::complex<double> coeff_filtered, double psi,
                                                const LinearFilterSpec& composite) {
    const std::complex<double> gain = transfer(composite, psi);
    if (std::abs(gain) <= 1e-9) {
        throw std::invalid_argument("transfer of '" + composite.name() +
                                    "' is numerically singular at psi = " + std::to_string(psi));
    }
    return coeff_filtered / gain;
}

/// Peak-to-trough range of h(t) = 2 Re[m e^{i psi t}]: the analytic value
/// 4|m|, independent of the sampled time span.
inline double amplitude_of(std::complex<double> coeff_original) {
    return 4.0 * std::abs(coeff_original);
}

/// One identified cycle: refined frequency, implied period, coefficients on
/// the filtered and the original series, and the amplitude 4|m|.
struct CycleEstimate {
    double psi = 0.0;
    double period_months = 0.0;
    double period_years = 0.0;
    std::complex<double> coeff_filtered{0.0, 0.0};
    std::complex<double> coeff_original{0.0, 0.0};
    double amplitude = 0.0;
    double interval_lo = 0.0;
    double interval_hi = 0.0;
};

}  // namespace cyclescope

#endif
