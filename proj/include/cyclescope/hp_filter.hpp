#ifndef CYCLESCOPE_HP_FILTER_HPP
#define CYCLESCOPE_HP_FILTER_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyclescope {

/// Smoothing parameter for a target cutoff frequency psi0 in (0, pi):
///   lambda = 1 / (4 (1 - cos psi0)^2).
inline double lambda_from_cutoff(double psi0) {
    if (!(psi0 > 0.0) || !(psi0 < std::numbers::pi)) {
        throw std::invalid_argument("cutoff frequency must lie in (0, pi), got " +
                                    std::to_string(psi0));
    }
    const double d = 1.0 - std::cos(psi0);
    return 1.0 / (4.0 * d * d);
}

/// Inverse mapping psi0 = arccos(1 - 1/(2 sqrt(lambda))); real only for lambda > 1/16.
inline double cutoff_from_lambda(double lambda) {
    if (!(lambda > 0.0)) {
        throw std::invalid_argument("lambda must be positive, got " + std::to_string(lambda));
    }
    const double u = 1.0 / (2.0 * std::sqrt(lambda));
    if (u >= 2.0) {
        throw std::invalid_argument("lambda = " + std::to_string(lambda) +
                                    " has no cutoff in (0, pi); need lambda > 1/16");
    }
    return std::acos(1.0 - u);
}

/// Trend/cycle split of one input path; cycle is the exact residual.
struct HPDecomposition {
    std::vector<double> trend;
    std::vector<double> cycle;
    double lambda = 0.0;
};

/// Penalized least-squares trend: solves (I + lambda D'D) tau = x with D the
/// (n-2) x n second-difference matrix, via banded Cholesky in O(n). No
/// boundary padding, so lines pass through untouched.
inline HPDecomposition hp_decompose(const std::vector<double>& x, double lambda) {
    if (lambda < 0.0) {
        throw std::invalid_argument("lambda must be nonnegative");
    }
    const std::size_t n = x.size();
    HPDecomposition out;
    out.lambda = lambda;
    if (lambda == 0.0) {
        if (n < 1) throw std::invalid_argument("hp_decompose needs n >= 1");
        out.trend = x;
        out.cycle.assign(n, 0.0);
        return out;
    }
    if (n < 4) {
        throw std::invalid_argument("hp_decompose with lambda > 0 needs n >= 4, got " +
                                    std::to_string(n));
    }

    // Diagonals of A = I + lambda * D'D (symmetric, bandwidth 2).
    std::vector<double> a0(n), a1(n - 1), a2(n - 2);
    for (std::size_t j = 0; j < n; ++j) {
        double d = 0.0;
        if (j + 2 < n) d += 1.0;                    // row j of D
        if (j >= 1 && j + 1 < n) d += 4.0;          // row j-1
        if (j >= 2) d += 1.0;                       // row j-2
        a0[j] = 1.0 + lambda * d;
    }
    for (std::size_t j = 0; j + 1 < n; ++j) {
        double d = 0.0;
        if (j + 2 < n) d += -2.0;                   // row j
        if (j >= 1) d += -2.0;                      // row j-1
        a1[j] = lambda * d;
    }
    for (std::size_t j = 0; j + 2 < n; ++j) {
        a2[j] = lambda;
    }

    // Banded Cholesky A = L L' with L lower, bandwidth 2.
    std::vector<double> l0(n), l1(n > 1 ? n - 1 : 0), l2(n > 2 ? n - 2 : 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (i >= 2) l2[i - 2] = a2[i - 2] / l0[i - 2];
        if (i >= 1) {
            double s = a1[i - 1];
            if (i >= 2) s -= l2[i - 2] * l1[i - 2];
            l1[i - 1] = s / l0[i - 1];
        }
        double s = a0[i];
        if (i >= 1) s -= l1[i - 1] * l1[i - 1];
        if (i >= 2) s -= l2[i - 2] * l2[i - 2];
        l0[i] = std::sqrt(s);
    }

    auto solve = [&](const std::vector<double>& rhs) {
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            double s = rhs[i];
            if (i >= 1) s -= l1[i - 1] * y[i - 1];
            if (i >= 2) s -= l2[i - 2] * y[i - 2];
            y[i] = s / l0[i];
        }
        std::vector<double> t(n);
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t i = n - 1 - k;
            double s = y[i];
            if (i + 1 < n) s -= l1[i] * t[i + 1];
            if (i + 2 < n) s -= l2[i] * t[i + 2];
            t[i] = s / l0[i];
        }
        return t;
    };
    out.trend = solve(x);

    // One step of iterative refinement for large lambda, where the system is
    // ill conditioned. The residual x - t - lambda*D'(D t) is formed from the
    // factored operator in extended precision; the direct banded multiply has
    // O(lambda*|x|) intermediates whose rounding would swamp the correction.
    std::vector<long double> dd(n - 2);
    for (std::size_t i = 0; i + 2 < n; ++i) {
        dd[i] = static_cast<long double>(out.trend[i]) - 2.0L * out.trend[i + 1] +
                out.trend[i + 2];
    }
    std::vector<double> residual(n);
    const long double lam = lambda;
    for (std::size_t i = 0; i < n; ++i) {
        long double s = 0.0L;
        if (i + 2 < n) s += dd[i];
        if (i >= 1 && i + 1 < n) s += -2.0L * dd[i - 1];
        if (i >= 2) s += dd[i - 2];
        residual[i] = static_cast<double>(static_cast<long double>(x[i]) - out.trend[i] - lam * s);
    }
    const std::vector<double> correction = solve(residual);
    for (std::size_t i = 0; i < n; ++i) out.trend[i] += correction[i];

    out.cycle.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.cycle[i] = x[i] - out.trend[i];
    return out;
}

}  // namespace cyclescope

#endif
