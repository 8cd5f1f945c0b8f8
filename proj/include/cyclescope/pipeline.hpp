#ifndef CYCLESCOPE_PIPELINE_HPP
#define CYCLESCOPE_PIPELINE_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclescope/filter.hpp"
#include "cyclescope/hp_filter.hpp"
#include "cyclescope/series.hpp"
#include "cyclescope/spectral.hpp"
#include "cyclescope/subsampling.hpp"

namespace cyclescope {

/// Knobs for the three-step identification run.
struct PipelineConfig {
    bool log_transform = true;
    int trend_order = 1;                              ///< p in (1-B)^p; 0 skips detrending
    std::vector<double> gammas = {0.92, 0.95, 0.99};  ///< confidence levels for the scan
    double scan_gamma = 0.99;                         ///< level used for interval detection
    FrequencyGrid grid = FrequencyGrid::default_grid();
    std::size_t b_override = 0;                       ///< 0 means the 2.5*sqrt(n) rule
    std::vector<double> lambdas = {5500.0, 12000.0, 32000.0, 55000.0};
    int min_phase_months = 9;                         ///< turning-point separation
    RefineObjective refine_objective = RefineObjective::demeaned;

    void validate() const {
        if (trend_order < 0 || trend_order > 3) {
            throw std::invalid_argument("trend order must be in 0..3, got " +
                                        std::to_string(trend_order));
        }
        if (gammas.empty()) throw std::invalid_argument("at least one confidence level required");
        for (double g : gammas) {
            if (!(g > 0.0) || !(g < 1.0)) {
                throw std::invalid_argument("confidence levels must lie in (0,1)");
            }
        }
        if (std::find(gammas.begin(), gammas.end(), scan_gamma) == gammas.end()) {
            throw std::invalid_argument("scan gamma " + std::to_string(scan_gamma) +
                                        " must be one of the configured levels");
        }
        if (grid.empty()) throw std::invalid_argument("frequency grid is empty");
        if (grid.points.front() <= 0.0 || grid.points.back() > kBandHi) {
            throw std::invalid_argument("scan grid must stay inside the business-cycle band (0, " +
                                        std::to_string(kBandHi) + "]");
        }
        for (double l : lambdas) {
            if (l < 0.0) throw std::invalid_argument("lambda values must be nonnegative");
        }
        if (min_phase_months < 1) throw std::invalid_argument("min phase must be >= 1 month");
    }
};

/// Closed frequency band flagged by the scan.
struct FrequencyInterval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double psi) const { return psi >= lo && psi <= hi; }
};

enum class TurningKind { peak, trough };

struct TurningPoint {
    std::size_t index = 0;  ///< 1-based position in the dated cycle
    YearMonth date{};
    TurningKind kind = TurningKind::peak;
    double value = 0.0;
};

/// One HP extraction attached to the report.
struct HPResult {
    double lambda = 0.0;
    std::optional<double> cutoff_months;  ///< empty when lambda <= 1/16 has no real cutoff
    HPDecomposition decomposition;
};

struct PipelineReport {
    PipelineConfig config;
    std::string input_digest;
    MonthlySeries stage_p;  ///< series entering Step 1 (after optional log)
    MonthlySeries stage_y;  ///< seasonally adjusted
    MonthlySeries stage_x;  ///< detrended scan input
    std::size_t b = 0;
    SignificanceScan scan;
    std::vector<FrequencyInterval> intervals;
    std::vector<CycleEstimate> cycles;
    std::vector<HPResult> hp;
    std::vector<TurningPoint> turning_points;
};

/// Maximal runs of consecutive flagged grid points, widened by half a grid
/// step on each side and clipped to the business-cycle band. Runs never merge
/// across an unflagged point; singleton runs yield nondegenerate intervals.
inline std::vector<FrequencyInterval> detect_intervals(const SignificanceScan& scan, double gamma) {
    const std::size_t g = scan.gamma_index(gamma);
    const double half = scan.grid.step() / 2.0;
    std::vector<FrequencyInterval> out;
    const std::size_t m = scan.grid.size();
    std::size_t i = 0;
    while (i < m) {
        if (!scan.flags[g][i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < m && scan.flags[g][j + 1]) ++j;
        FrequencyInterval band;
        band.lo = std::max(scan.grid.points[i] - half, 0.0);
        band.hi = std::min(scan.grid.points[j] + half, kBandHi);
        out.push_back(band);
        i = j + 1;
    }
    return out;
}

/// Alternating peak/trough sequence: interior local extrema kept only when at
/// least `min_phase_months` from the previous retained point; adjacent
/// same-kind extrema collapse to the more extreme one.
inline std::vector<TurningPoint> turning_points(const std::vector<double>& cycle,
                                                int min_phase_months, YearMonth start) {
    if (cycle.empty()) {
        throw std::invalid_argument("turning_points on empty cycle");
    }
    if (min_phase_months < 1) {
        throw std::invalid_argument("min phase must be >= 1 month");
    }
    std::vector<TurningPoint> out;
    for (std::size_t i = 1; i + 1 < cycle.size(); ++i) {
        TurningKind kind;
        if (cycle[i] > cycle[i - 1] && cycle[i] >= cycle[i + 1]) {
            kind = TurningKind::peak;
        } else if (cycle[i] < cycle[i - 1] && cycle[i] <= cycle[i + 1]) {
            kind = TurningKind::trough;
        } else {
            continue;
        }
        const TurningPoint cand{i + 1, start.plus_months(static_cast<long>(i)), kind, cycle[i]};
        if (out.empty()) {
            out.push_back(cand);
            continue;
        }
        TurningPoint& last = out.back();
        if (cand.kind == last.kind) {
            const bool more_extreme = (cand.kind == TurningKind::peak) ? cand.value > last.value
                                                                       : cand.value < last.value;
            if (more_extreme) last = cand;
        } else if (cand.index - last.index >= static_cast<std::size_t>(min_phase_months)) {
            out.push_back(cand);
        }
    }
    return out;
}

/// Runs the three-step identification end to end: seasonal adjustment by the
/// 2x12 average, differencing, the subsampling scan with interval detection
/// and frequency refinement, amplitude back-out through the composite
/// transfer, HP extraction per lambda, and turning-point dating on the cycle
/// at the smallest lambda.
inline PipelineReport run(const MonthlySeries& series, const PipelineConfig& config,
                          std::string input_digest = "") {
    config.validate();
    if (series.size() < 49) {
        throw std::invalid_argument("pipeline requires at least 49 monthly observations, have " +
                                    std::to_string(series.size()));
    }

    PipelineReport report;
    report.config = config;
    report.input_digest = std::move(input_digest);

    report.stage_p = config.log_transform ? series.log() : series;

    const LinearFilterSpec seasonal = ma_2x12();
    report.stage_y = apply_filter(report.stage_p, seasonal);

    const int p = config.trend_order;
    const LinearFilterSpec composite =
        (p >= 1) ? convolve(difference_filter(p), seasonal) : seasonal;
    // One composite application, so the transfer used in back-out matches the
    // filter that actually produced X.
    report.stage_x = (p >= 1) ? apply_filter(report.stage_p, composite) : report.stage_y;

    const std::size_t nx = report.stage_x.size();
    if (config.b_override == 0 && nx < 16) {
        throw std::invalid_argument("series too short: the scan input has " + std::to_string(nx) +
                                    " samples after filtering; need at least " +
                                    std::to_string(16 + 12 + p) + " input months");
    }
    report.b = config.b_override != 0 ? config.b_override : default_block_length(nx);

    report.scan = scan(report.stage_x.values(), config.grid, report.b, config.gammas);
    report.intervals = detect_intervals(report.scan, config.scan_gamma);

    for (const FrequencyInterval& band : report.intervals) {
        const RefinedFrequency refined =
            refine_frequency(report.stage_x.values(), band.lo, band.hi, config.refine_objective);
        CycleEstimate est;
        est.psi = refined.psi;
        const CyclePeriod period = period_of(refined.psi);
        est.period_months = period.months;
        est.period_years = period.years;
        // X is indexed from its own first sample, q months after the input
        // start; rotate the coefficient back onto the input time axis so the
        // transfer relation holds with the right phase.
        est.coeff_filtered =
            refined.coeff * std::polar(1.0, -refined.psi * static_cast<double>(composite.lags()));
        est.coeff_original = backout_coefficient(est.coeff_filtered, refined.psi, composite);
        est.amplitude = amplitude_of(est.coeff_original);
        est.interval_lo = band.lo;
        est.interval_hi = band.hi;
        report.cycles.push_back(est);
    }
    std::sort(report.cycles.begin(), report.cycles.end(),
              [](const CycleEstimate& a, const CycleEstimate& b) { return a.psi < b.psi; });

    for (double lambda : config.lambdas) {
        HPResult res;
        res.lambda = lambda;
        if (lambda > 1.0 / 16.0) {
            res.cutoff_months = period_of(cutoff_from_lambda(lambda)).months;
        }
        res.decomposition = hp_decompose(report.stage_y.values(), lambda);
        report.hp.push_back(res);
    }
    std::sort(report.hp.begin(), report.hp.end(),
              [](const HPResult& a, const HPResult& b) { return a.lambda < b.lambda; });

    if (!report.hp.empty()) {
        report.turning_points = turning_points(report.hp.front().decomposition.cycle,
                                               config.min_phase_months, report.stage_y.start());
    }
    return report;
}

}  // namespace cyclescope

#endif
