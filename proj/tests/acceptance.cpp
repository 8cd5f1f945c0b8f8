// Acceptance suite: prints one line per criterion and exits nonzero when any
// criterion fails. Monte Carlo criteria use fixed seeds, so the whole run is
// deterministic.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cyclescope/cyclescope.hpp"
#include "fixture.hpp"

using namespace cyclescope;
namespace fs = std::filesystem;
using nlohmann::json;
using std::numbers::pi;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %-44s %s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(const char* f, ...) {
    char buf[256];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

// 1. the four lambda defaults map to 4.5/5.5/7/8-year cutoffs within 2%
void criterion_lambda_table() {
    const std::vector<std::pair<double, double>> table = {
        {5500.0, 4.5}, {12000.0, 5.5}, {32000.0, 7.0}, {55000.0, 8.0}};
    double worst = 0.0;
    for (const auto& [lambda, years] : table) {
        const double got = period_of(cutoff_from_lambda(lambda)).years;
        worst = std::max(worst, std::fabs(got - years) / years);
    }
    criterion(1, "lambda -> cycle-length table", worst < 0.02, fmt("max rel err %.4f", worst));
}

// 2. frequency-to-period conversions of the identified cycles
void criterion_period_table() {
    const auto y1 = period_of(0.062).years;
    const auto y2 = period_of(0.153).years;
    const auto y3 = period_of(0.258).years;
    const bool pass = y1 >= 8.4 && y1 <= 8.5 && std::fabs(y2 - 3.4) < 0.05 &&
                      std::fabs(y3 - 2.0) < 0.05;
    criterion(2, "frequency to cycle-length conversion", pass,
              fmt("years = %.3f / %.3f / %.3f", y1, y2, y3));
}

// 3. subsampling distribution equals the brute-force oracle on all small cases
void criterion_oracle_equivalence() {
    const CounterRng rng(20240907);
    std::uint64_t counter = 0;
    double worst = 0.0;
    for (std::size_t n = 2; n <= 12; ++n) {
        std::vector<double> x(n);
        for (double& v : x) v = rng.normal(counter++);
        for (std::size_t b = 1; b < n; ++b) {
            for (double psi : {pi / 6.0, pi / 4.0, pi / 2.0}) {
                for (auto mode : {SubsampleMode::uncentered, SubsampleMode::centered}) {
                    const auto dist = subsample_distribution(x, b, psi, mode);
                    auto brute = oracle::subsample_stats(x, b, psi, mode);
                    std::sort(brute.begin(), brute.end());
                    for (std::size_t i = 0; i < brute.size(); ++i) {
                        worst = std::max(worst, std::fabs(brute[i] - dist.stats[i]));
                    }
                    for (double q : dist.stats) {
                        const double at = q + 1e-12 * std::max(1.0, std::fabs(q));
                        worst = std::max(
                            worst,
                            std::fabs(oracle::subsample_cdf(x, b, psi, mode, at) - dist.cdf(at)));
                    }
                }
            }
        }
    }
    criterion(3, "subsampling oracle equivalence (n <= 12)", worst <= 1e-14,
              fmt("max abs diff %.3e", worst));
}

// 4. the 2x12 filter annihilates every monthly seasonal line
void criterion_seasonal_annihilation() {
    const LinearFilterSpec f = ma_2x12();
    double worst_transfer = 0.0;
    for (int k = 1; k <= 11; ++k) {
        worst_transfer = std::max(worst_transfer, std::abs(transfer(f, 2.0 * pi * k / 12.0)));
    }
    std::vector<double> x(240);
    for (std::size_t t = 1; t <= x.size(); ++t) {
        double v = 0.0;
        for (int k = 1; k <= 11; ++k) {
            v += (0.5 + 0.1 * k) * std::cos(2.0 * pi * k * static_cast<double>(t) / 12.0 + 0.2 * k);
        }
        x[t - 1] = v;
    }
    const auto filtered = apply_filter(MonthlySeries(YearMonth{2000, 1}, x), f);
    double worst_sample = 0.0;
    for (double v : filtered.values()) worst_sample = std::max(worst_sample, std::fabs(v));
    criterion(4, "seasonal annihilation", worst_transfer < 1e-12 && worst_sample < 1e-10,
              fmt("|transfer| %.2e, |filtered| %.2e", worst_transfer, worst_sample));
}

// 5. banded HP solve against the dense oracle, plus the linear-input identity
void criterion_hp_oracle() {
    const std::size_t n = 200;
    const CounterRng rng(424242);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rng.normal(i) + 0.01 * static_cast<double>(i);
    double worst = 0.0;
    for (double lambda : {1600.0, 5500.0, 55000.0}) {
        const auto banded = hp_decompose(x, lambda);
        const auto dense = oracle::hp_dense_trend(x, lambda);
        for (std::size_t i = 0; i < n; ++i) {
            worst = std::max(worst, std::fabs(banded.trend[i] - dense[i]));
        }
    }
    std::vector<double> line(n);
    for (std::size_t i = 0; i < n; ++i) line[i] = 1.0 + 0.3 * static_cast<double>(i);
    double worst_line = 0.0;
    for (double c : hp_decompose(line, 1600.0).cycle) {
        worst_line = std::max(worst_line, std::fabs(c));
    }
    criterion(5, "HP banded vs dense oracle", worst < 1e-10 && worst_line < 1e-10,
              fmt("max abs diff %.3e, line cycle %.3e", worst, worst_line));
}

// 6a. noise-only size; 6b. power for the 3.4-year harmonic
void criterion_size_power() {
    const std::size_t n = 1800;
    const std::size_t reps = 200;

    SyntheticSpec null_spec;
    null_spec.sigma = 1.0;
    null_spec.seed = 61001;
    const std::vector<double> targets = {10 * pi / 720.0, 25 * pi / 720.0, 35 * pi / 720.0,
                                         46 * pi / 720.0, 57 * pi / 720.0, 70 * pi / 720.0};
    const auto size_run = monte_carlo(null_spec, n, reps, 0.95, targets);
    double worst_rate = 0.0;
    const double bound = 0.05 + 3.0 * std::sqrt(0.05 * 0.95 / static_cast<double>(reps));
    for (const auto& t : size_run.targets) {
        worst_rate = std::max(worst_rate, t.rejection_rate());
    }
    criterion(6, "size: null rejection within 0.05 + 3se", worst_rate <= bound,
              fmt("max rate %.3f vs bound %.3f", worst_rate, bound));

    SyntheticSpec alt;
    alt.harmonics = {{0.153, 0.035, 0.0}};  // 4|m| = 0.07
    alt.sigma = 0.09;                       // sqrt(n)|m|/sigma = 8.25
    alt.seed = 61002;
    const auto power_run = monte_carlo(alt, n, reps, 0.99, {0.153}, true);
    const double hit = power_run.targets[0].interval_hit_rate();
    criterion(6, "power: interval flags the 0.153 harmonic", hit >= 0.90,
              fmt("interval hit rate %.3f (>= 0.90)", hit));
}

// 7. the refined frequency tightens with the sample length
void criterion_consistency() {
    const std::size_t reps = 100;
    auto median_error = [&](std::size_t n) {
        std::vector<double> errs(reps);
        parallel_for_index(reps, [&](std::size_t r) {
            SyntheticSpec spec;
            spec.harmonics = {{0.153, 0.05, 0.0}};
            spec.sigma = 0.2;
            spec.seed = derive_seed(71000, r);
            const auto path = generate(spec, n, YearMonth{1990, 1});
            const auto refined = refine_frequency(path.values(), 0.12, 0.19);
            errs[r] = std::fabs(refined.psi - 0.153);
        });
        std::sort(errs.begin(), errs.end());
        return 0.5 * (errs[reps / 2 - 1] + errs[reps / 2]);
    };
    const double e600 = median_error(600);
    const double e2400 = median_error(2400);
    criterion(7, "frequency estimator consistency", e600 >= 2.0 * e2400,
              fmt("median |err| %.2e (n=600) vs %.2e (n=2400)", e600, e2400));
}

// 8. amplitude back-out through the composite transfer
void criterion_amplitude_backout() {
    SyntheticSpec clean = fixture_spec();
    clean.sigma = 0.0;
    const auto series = fixture_level_series(clean, 7200, YearMonth{1995, 1});
    PipelineConfig config;
    // finer grid: at n=7200 the statistic's main lobe is narrower than pi/720
    config.grid = FrequencyGrid::regular(pi / 7200.0, kBandHi);
    const auto report = run(series, config);
    double worst_clean = 1.0;
    if (report.cycles.size() >= 3) {
        worst_clean = 0.0;
        for (const auto& h : clean.harmonics) {
            // side lobes of strong lines also flag in the noiseless scan; take
            // the nearest refined cycle as the planted line's estimate
            const CycleEstimate* best = nullptr;
            for (const auto& c : report.cycles) {
                if (!best || std::fabs(c.psi - h.psi) < std::fabs(best->psi - h.psi)) best = &c;
            }
            const double err = std::fabs(best->amplitude - 4.0 * std::abs(h.coeff())) /
                               (4.0 * std::abs(h.coeff()));
            worst_clean = std::max(worst_clean, err);
        }
    }
    criterion(8, "noiseless amplitude back-out within 1%", worst_clean < 0.01,
              fmt("max rel err %.4f", worst_clean));

    // noisy single-harmonic setting (criterion 6b): median relative error
    const std::size_t reps = 50;
    std::vector<double> errs(reps);
    parallel_for_index(reps, [&](std::size_t r) {
        SyntheticSpec noisy;
        noisy.harmonics = {{0.153, 0.035, 0.0}};
        noisy.sigma = 0.09;
        noisy.seed = derive_seed(81000, r);
        const auto path = generate(noisy, 1800, YearMonth{1990, 1});
        PipelineConfig cfg;
        cfg.log_transform = false;
        const auto rep = run(path, cfg);
        double err = 1.0;
        for (const auto& c : rep.cycles) {
            if (std::fabs(c.psi - 0.153) < 0.01) {
                err = std::fabs(c.amplitude - 0.07) / 0.07;
            }
        }
        errs[r] = err;
    });
    std::sort(errs.begin(), errs.end());
    const double med = 0.5 * (errs[reps / 2 - 1] + errs[reps / 2]);
    criterion(8, "noisy amplitude back-out, median rel err < 15%", med < 0.15,
              fmt("median rel err %.4f", med));
}

// 9. one-sided CI coverage of the true |m|
void criterion_ci_coverage() {
    SyntheticSpec spec;
    spec.harmonics = {{0.153, 0.025, 0.0}};  // |m| = 0.0125
    spec.sigma = 0.1;
    spec.seed = 91001;
    const auto res = monte_carlo(spec, 1800, 200, 0.95, {0.153});
    const double cov = res.targets[0].coverage_rate();
    criterion(9, "CI coverage at gamma = 0.95", std::fabs(cov - 0.95) <= 0.05,
              fmt("coverage %.3f (target 0.95 +/- 0.05)", cov));
}

// numeric-canonical JSON comparison: numbers within 1e-12 (abs or rel),
// everything else exact
bool json_close(const json& a, const json& b, std::string& where, const std::string& path) {
    if (a.is_number() && b.is_number()) {
        const double x = a.get<double>();
        const double y = b.get<double>();
        const double tol = 1e-12 * std::max(1.0, std::max(std::fabs(x), std::fabs(y)));
        if (std::fabs(x - y) > tol) {
            where = path + ": " + a.dump() + " vs " + b.dump();
            return false;
        }
        return true;
    }
    if (a.type() != b.type()) {
        where = path + ": type mismatch";
        return false;
    }
    if (a.is_object()) {
        if (a.size() != b.size()) {
            where = path + ": object size mismatch";
            return false;
        }
        for (auto it = a.begin(); it != a.end(); ++it) {
            if (!b.contains(it.key())) {
                where = path + ": missing key " + it.key();
                return false;
            }
            if (!json_close(it.value(), b.at(it.key()), where, path + "/" + it.key())) {
                return false;
            }
        }
        return true;
    }
    if (a.is_array()) {
        if (a.size() != b.size()) {
            where = path + ": array size mismatch";
            return false;
        }
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!json_close(a[i], b[i], where, path + "[" + std::to_string(i) + "]")) {
                return false;
            }
        }
        return true;
    }
    if (a != b) {
        where = path + ": " + a.dump() + " vs " + b.dump();
        return false;
    }
    return true;
}

// 10. end-to-end golden run through the CLI binary
void criterion_golden_run() {
    const fs::path data_dir = CYCLESCOPE_DATA_DIR;
    const fs::path fixture = data_dir / "fixture.csv";
    const fs::path golden = data_dir / "golden_report.json";
    if (!fs::exists(fixture) || !fs::exists(golden)) {
        criterion(10, "golden analyze run", false, "bundled fixture or golden report missing");
        return;
    }
    const fs::path out_dir = fs::temp_directory_path() / "cyclescope_golden";
    fs::create_directories(out_dir);
    const std::string cmd = std::string(CYCLESCOPE_CLI_PATH) + " analyze " + fixture.string() +
                            " --log --p 1 --scan-gamma 0.99 --out " + out_dir.string() +
                            " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    if (rc != 0) {
        criterion(10, "golden analyze run", false, fmt("analyze exited with %d", rc));
        return;
    }
    std::ifstream got_f(out_dir / "report.json");
    std::ifstream want_f(golden);
    const json got = json::parse(got_f);
    const json want = json::parse(want_f);
    std::string where;
    const bool pass = json_close(got, want, where, "");
    criterion(10, "golden analyze run", pass,
              pass ? "report matches at 1e-12" : ("first mismatch at " + where));
}

}  // namespace

int main() {
    criterion_lambda_table();
    criterion_period_table();
    criterion_oracle_equivalence();
    criterion_seasonal_annihilation();
    criterion_hp_oracle();
    criterion_size_power();
    criterion_consistency();
    criterion_amplitude_backout();
    criterion_ci_coverage();
    criterion_golden_run();
    std::printf("acceptance: %s (%d failure%s)\n", failures == 0 ? "all criteria passed" : "FAILED",
                failures, failures == 1 ? "" : "s");
    return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
