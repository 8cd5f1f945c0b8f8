#ifndef CYCLESCOPE_TESTS_FIXTURE_HPP
#define CYCLESCOPE_TESTS_FIXTURE_HPP

#include "cyclescope/synth.hpp"

// The bundled synthetic fixture layout: three business-cycle harmonics with
// peak-to-trough amplitudes 0.13 / 0.07 / 0.02 (in log scale) over a linear
// trend, two seasonal lines, and AR(1) noise with month-dependent volatility.
inline cyclescope::SyntheticSpec fixture_spec() {
    cyclescope::SyntheticSpec spec;
    spec.trend = {4.6, 0.002};
    spec.harmonics = {
        {0.062, 0.0650, 0.0},  // 8.4-year cycle, amplitude 4|m| = 0.13
        {0.153, 0.0350, 0.0},  // 3.4-year cycle, amplitude 0.07
        {0.258, 0.0125, 0.0},  // 2.0-year cycle, amplitude 0.025
    };
    spec.seasonal = {{1, 0.08, 0.3}, {2, 0.03, -1.0}};
    spec.ar1 = 0.3;
    spec.sigma = 0.004;
    spec.volatility = {1.1, 1.0, 0.9, 1.0, 1.0, 1.2, 1.0, 0.95, 1.0, 1.05, 1.0, 1.0};
    spec.seed = 20240501;
    return spec;
}

/// The fixture in level form (exp of the log-scale path), as `analyze --log`
/// consumes it.
inline cyclescope::MonthlySeries fixture_level_series(const cyclescope::SyntheticSpec& spec,
                                                      std::size_t n,
                                                      cyclescope::YearMonth start) {
    const cyclescope::MonthlySeries logs = cyclescope::generate(spec, n, start, "fixture");
    std::vector<double> level(logs.size());
    for (std::size_t i = 0; i < level.size(); ++i) level[i] = std::exp(logs.values()[i]);
    return cyclescope::MonthlySeries(start, std::move(level), "fixture");
}

#endif
