#ifndef CYCLESCOPE_FILTER_HPP
#define CYCLESCOPE_FILTER_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cyclescope/series.hpp"

namespace cyclescope {

/// Finite two-sided linear filter L(B) = sum_{j=-p..q} a_j B^j acting as
/// (L X)_t = sum_j a_j X_{t-j}. Negative lags are leads, positive lags look back.
class LinearFilterSpec {
public:
    /// `coeffs[k]` is the coefficient at lag `min_lag + k`.
    LinearFilterSpec(int min_lag, std::vector<double> coeffs, std::string name = "")
        : min_lag_(min_lag), coeffs_(std::move(coeffs)), name_(std::move(name)) {
        if (coeffs_.empty()) {
            throw std::invalid_argument("filter '" + name_ + "' has no coefficients");
        }
        bool any_nonzero = false;
        for (double a : coeffs_) any_nonzero = any_nonzero || a != 0.0;
        if (!any_nonzero) {
            throw std::invalid_argument("filter '" + name_ + "' has all-zero coefficients");
        }
        if (min_lag_ > 0 || max_lag() < 0) {
            // Lags must span [-p, q] with p, q >= 0.
            throw std::invalid_argument("filter '" + name_ + "' lag range must include 0");
        }
    }

    int min_lag() const { return min_lag_; }
    int max_lag() const { return min_lag_ + static_cast<int>(coeffs_.size()) - 1; }
    /// Lead reach p >= 0 (samples needed after t).
    int leads() const { return -min_lag_; }
    /// Lag reach q >= 0 (samples needed before t).
    int lags() const { return max_lag(); }
    const std::vector<double>& coeffs() const { return coeffs_; }
    const std::string& name() const { return name_; }

    double coeff_at(int lag) const {
        if (lag < min_lag_ || lag > max_lag()) return 0.0;
        return coeffs_[static_cast<std::size_t>(lag - min_lag_)];
    }

private:
    int min_lag_;
    std::vector<double> coeffs_;
    std::string name_;
};

/// Centered 2x12 moving average: weights (1,2,...,2,1)/24 on lags -6..6.
/// Annihilates the monthly seasonal frequencies 2*pi*k/12, k=1..11.
inline LinearFilterSpec ma_2x12() {
    std::vector<double> a(13, 2.0 / 24.0);
    a.front() = 1.0 / 24.0;
    a.back() = 1.0 / 24.0;
    return LinearFilterSpec(-6, std::move(a), "ma_2x12");
}

/// Differencing operator (1-B)^p with signed binomial coefficients on lags 0..p.
inline LinearFilterSpec difference_filter(int p) {
    if (p < 1) {
        throw std::invalid_argument("difference_filter requires p >= 1, got " + std::to_string(p));
    }
    std::vector<double> a(static_cast<std::size_t>(p) + 1);
    double c = 1.0;  // C(p, 0)
    for (int j = 0; j <= p; ++j) {
        a[static_cast<std::size_t>(j)] = (j % 2 == 0) ? c : -c;
        c = c * (p - j) / (j + 1);
    }
    return LinearFilterSpec(0, std::move(a), "diff^" + std::to_string(p));
}

/// Product filter F(B)G(B): convolution of the coefficient sequences.
inline LinearFilterSpec convolve(const LinearFilterSpec& f, const LinearFilterSpec& g) {
    const int lo = f.min_lag() + g.min_lag();
    const int hi = f.max_lag() + g.max_lag();
    std::vector<double> out(static_cast<std::size_t>(hi - lo) + 1, 0.0);
    for (int j = f.min_lag(); j <= f.max_lag(); ++j) {
        for (int k = g.min_lag(); k <= g.max_lag(); ++k) {
            out[static_cast<std::size_t>(j + k - lo)] += f.coeff_at(j) * g.coeff_at(k);
        }
    }
    return LinearFilterSpec(lo, std::move(out), f.name() + "*" + g.name());
}

/// Transfer function L(e^{-i psi}) = sum_j a_j e^{-i psi j}, by direct summation.
inline std::complex<double> transfer(const LinearFilterSpec& filter, double psi) {
    std::complex<double> sum(0.0, 0.0);
    for (int j = filter.min_lag(); j <= filter.max_lag(); ++j) {
        sum += filter.coeff_at(j) * std::polar(1.0, -psi * j);
    }
    return sum;
}

/// Applies the filter where every tap is in-sample: output position k (1-based)
/// equals sum_j a_j * input[k + q - j], so the result has length n - p - q and
/// its start month advances by q. No padding or extrapolation at the edges.
inline MonthlySeries apply_filter(const MonthlySeries& series, const LinearFilterSpec& filter) {
    const int p = filter.leads();
    const int q = filter.lags();
    const long n = static_cast<long>(series.size());
    if (n <= p + q) {
        throw std::invalid_argument("series '" + series.label() + "' too short for filter '" +
                                    filter.name() + "': need at least " + std::to_string(p + q + 1) +
                                    " observations, have " + std::to_string(n));
    }
    const std::vector<double>& x = series.values();
    std::vector<double> out(static_cast<std::size_t>(n - p - q));
    for (long k = 1; k <= n - p - q; ++k) {
        double acc = 0.0;
        for (int j = filter.min_lag(); j <= filter.max_lag(); ++j) {
            acc += filter.coeff_at(j) * x[static_cast<std::size_t>(k + q - j - 1)];
        }
        out[static_cast<std::size_t>(k - 1)] = acc;
    }
    return MonthlySeries(series.start().plus_months(q), std::move(out),
                         filter.name() + "(" + series.label() + ")");
}

}  // namespace cyclescope

#endif
