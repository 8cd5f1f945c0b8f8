// cyclescope: identify significant business-cycle frequencies in monthly
// series, extract the cycle with an HP filter, and simulate ground-truth
// fixtures for validation.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cyclescope/cyclescope.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

std::string read_file_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw cyclescope::InputError("cannot open '" + path.string() + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void print_cycle_table(const cyclescope::PipelineReport& report) {
    if (report.cycles.empty()) {
        std::printf("no significant cycles at gamma=%g\n", report.config.scan_gamma);
        return;
    }
    std::printf("%-10s %-14s %-12s %-12s\n", "psi", "period_months", "period_years", "amplitude");
    for (const auto& c : report.cycles) {
        std::printf("%-10.4f %-14.2f %-12.2f %-12.5f\n", c.psi, c.period_months, c.period_years,
                    c.amplitude);
    }
}

int run_analyze(const fs::path& input, const cyclescope::PipelineConfig& config,
                const fs::path& out_dir) {
    const std::string bytes = read_file_bytes(input);
    const cyclescope::MonthlySeries series = cyclescope::read_monthly_csv(input);

    cyclescope::RunManifest manifest;
    manifest.command = "analyze";
    manifest.input_file = input.filename().string();
    manifest.input_digest = cyclescope::fnv1a_digest(bytes);
    manifest.outputs = {"report.json", "scan.csv", "hp_cycles.csv"};

    const cyclescope::PipelineReport report =
        cyclescope::run(series, config, manifest.input_digest);

    fs::create_directories(out_dir);
    const json doc = cyclescope::report_to_json(report, manifest);
    cyclescope::write_file_atomic(out_dir / "report.json", doc.dump(2) + "\n");
    cyclescope::write_file_atomic(out_dir / "scan.csv", cyclescope::scan_to_csv(report.scan));
    cyclescope::write_file_atomic(out_dir / "hp_cycles.csv", cyclescope::hp_cycles_to_csv(report));

    std::printf("n=%zu  b=%zu  intervals=%zu\n", series.size(), report.b, report.intervals.size());
    print_cycle_table(report);
    if (!report.turning_points.empty()) {
        std::printf("turning points (lambda=%g):\n", report.hp.front().lambda);
        for (const auto& tp : report.turning_points) {
            std::printf("  %s  %-6s  %.6f\n", tp.date.str().c_str(),
                        tp.kind == cyclescope::TurningKind::peak ? "peak" : "trough", tp.value);
        }
    }
    std::printf("wrote %s\n", (out_dir / "report.json").string().c_str());
    return kExitOk;
}

int run_simulate(const fs::path& spec_path, std::size_t n, std::uint64_t seed_override,
                 bool seed_given, const std::string& start_text, const fs::path& out_dir) {
    json spec_doc;
    try {
        spec_doc = json::parse(read_file_bytes(spec_path));
    } catch (const json::parse_error& e) {
        throw cyclescope::InputError("'" + spec_path.string() + "': " + e.what());
    }
    cyclescope::SyntheticSpec spec = cyclescope::synthetic_spec_from_json(spec_doc);
    if (seed_given) spec.seed = seed_override;
    const cyclescope::YearMonth start = cyclescope::parse_year_month(start_text);

    const cyclescope::MonthlySeries series = cyclescope::generate(spec, n, start);

    fs::create_directories(out_dir);
    cyclescope::write_monthly_csv(out_dir / "series.csv", series);

    cyclescope::RunManifest manifest;
    manifest.command = "simulate";
    manifest.input_file = spec_path.filename().string();
    manifest.input_digest = cyclescope::digest_series(series);
    manifest.seed = spec.seed;
    manifest.outputs = {"series.csv", "truth.json"};
    const json truth = cyclescope::truth_to_json(spec, manifest);
    cyclescope::write_file_atomic(out_dir / "truth.json", truth.dump(2) + "\n");

    std::printf("wrote %s (%zu rows) and truth.json, seed=%llu\n",
                (out_dir / "series.csv").string().c_str(), n,
                static_cast<unsigned long long>(spec.seed));
    return kExitOk;
}

int run_filter(const fs::path& input, const std::vector<double>& lambdas, const fs::path& out_dir) {
    const cyclescope::MonthlySeries series = cyclescope::read_monthly_csv(input);
    std::vector<cyclescope::HPResult> results;
    for (double lambda : lambdas) {
        cyclescope::HPResult res;
        res.lambda = lambda;
        if (lambda > 1.0 / 16.0) {
            res.cutoff_months =
                cyclescope::period_of(cyclescope::cutoff_from_lambda(lambda)).months;
        }
        res.decomposition = cyclescope::hp_decompose(series.values(), lambda);
        results.push_back(res);
    }
    fs::create_directories(out_dir);
    const fs::path out = out_dir / "decomposition.csv";
    cyclescope::write_file_atomic(out, cyclescope::decomposition_to_csv(series, results));
    std::printf("wrote %s\n", out.string().c_str());
    return kExitOk;
}

struct CheckPrinter {
    int failures = 0;
    json checks = json::array();

    void report(const std::string& name, bool pass, double measured, double tolerance) {
        std::printf("[%s] %-52s measured=%.3e tol=%.3e\n", pass ? "PASS" : "FAIL", name.c_str(),
                    measured, tolerance);
        checks.push_back(
            {{"name", name}, {"pass", pass}, {"measured", measured}, {"tolerance", tolerance}});
        if (!pass) ++failures;
    }
};

void validate_oracle(CheckPrinter& out) {
    using cyclescope::SubsampleMode;
    const cyclescope::CounterRng rng(20240907);
    const std::vector<double> psis = {std::numbers::pi / 6.0, std::numbers::pi / 4.0,
                                      std::numbers::pi / 2.0};
    double worst = 0.0;
    std::uint64_t counter = 0;
    for (std::size_t n = 2; n <= 12; ++n) {
        std::vector<double> values(n);
        for (double& v : values) v = rng.normal(counter++);
        for (std::size_t b = 1; b < n; ++b) {
            for (double psi : psis) {
                for (SubsampleMode mode : {SubsampleMode::uncentered, SubsampleMode::centered}) {
                    const auto dist = cyclescope::subsample_distribution(values, b, psi, mode);
                    auto stats = cyclescope::oracle::subsample_stats(values, b, psi, mode);
                    std::sort(stats.begin(), stats.end());
                    for (std::size_t i = 0; i < stats.size(); ++i) {
                        worst = std::max(worst, std::fabs(stats[i] - dist.stats[i]));
                    }
                    for (double x : dist.stats) {
                        const double at = x + 1e-12 * std::max(1.0, std::fabs(x));
                        const double lhs =
                            cyclescope::oracle::subsample_cdf(values, b, psi, mode, at);
                        worst = std::max(worst, std::fabs(lhs - dist.cdf(at)));
                    }
                }
            }
        }
    }
    out.report("subsampling vs brute-force oracle (n<=12, all b)", worst <= 1e-14, worst, 1e-14);
}

void validate_hp(CheckPrinter& out) {
    const std::size_t n = 200;
    const cyclescope::CounterRng rng(555);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rng.normal(i);

    for (double lambda : {1600.0, 5500.0, 55000.0}) {
        const auto banded = cyclescope::hp_decompose(x, lambda);
        const auto dense = cyclescope::oracle::hp_dense_trend(x, lambda);
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            worst = std::max(worst, std::fabs(banded.trend[i] - dense[i]));
        }
        out.report("hp banded vs dense solve, lambda=" + cyclescope::format_double(lambda),
                   worst < 1e-10, worst, 1e-10);
    }

    std::vector<double> line(n);
    for (std::size_t i = 0; i < n; ++i) line[i] = 3.0 + 0.25 * static_cast<double>(i);
    const auto dec = cyclescope::hp_decompose(line, 1600.0);
    double worst = 0.0;
    for (double c : dec.cycle) worst = std::max(worst, std::fabs(c));
    out.report("hp linear input has zero cycle", worst < 1e-10, worst, 1e-10);
}

void validate_lambda_table(CheckPrinter& out) {
    const std::vector<std::pair<double, double>> table = {
        {5500.0, 4.5}, {12000.0, 5.5}, {32000.0, 7.0}, {55000.0, 8.0}};
    for (const auto& [lambda, years] : table) {
        const double psi = cyclescope::cutoff_from_lambda(lambda);
        const double got = cyclescope::period_of(psi).years;
        const double rel = std::fabs(got - years) / years;
        std::printf("    lambda=%-7g cutoff=%.4f rad -> %.2f years (target %.1f)\n", lambda, psi,
                    got, years);
        out.checks.push_back({{"name", "lambda table entry " + cyclescope::format_label(lambda)},
                              {"lambda", lambda},
                              {"cutoff_rad", psi},
                              {"years", got},
                              {"target_years", years}});
        out.report("lambda table entry " + cyclescope::format_label(lambda), rel < 0.02, rel,
                   0.02);
    }
}

int run_validate(bool oracle, bool hp, bool lambda_table, const fs::path& out_dir) {
    const bool all = !oracle && !hp && !lambda_table;
    CheckPrinter out;
    if (oracle || all) validate_oracle(out);
    if (hp || all) validate_hp(out);
    if (lambda_table || all) validate_lambda_table(out);
    std::printf("%d check(s) failed\n", out.failures);
    fs::create_directories(out_dir);
    const json doc = {{"command", "validate"},
                      {"tool_version", cyclescope::kToolVersion},
                      {"failures", out.failures},
                      {"checks", out.checks}};
    cyclescope::write_file_atomic(out_dir / "validate.json", doc.dump(2) + "\n");
    return out.failures == 0 ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"business-cycle frequency identification for monthly time series"};
    app.require_subcommand(1);

    // analyze
    std::string analyze_input;
    std::string analyze_out = ".";
    cyclescope::PipelineConfig config;
    double grid_step = cyclescope::kDefaultGridStep;
    double band_hi = cyclescope::kBandHi;
    std::uint64_t b_override = 0;
    std::string refine_objective = "demeaned";
    auto* analyze = app.add_subcommand("analyze", "run the identification pipeline on a CSV");
    analyze->add_option("input", analyze_input, "input CSV (date,value)")->required();
    analyze->add_flag("--log,!--no-log", config.log_transform,
                      "log-transform the series first (default on)");
    analyze->add_option("--p", config.trend_order, "trend differencing order (0..3)");
    analyze->add_option("--gammas", config.gammas, "confidence levels")->delimiter(',');
    analyze->add_option("--scan-gamma", config.scan_gamma, "level used for interval detection");
    analyze->add_option("--grid-step", grid_step, "scan grid step in rad/month");
    analyze->add_option("--band-hi", band_hi, "upper band edge in rad/month");
    analyze->add_option("--b", b_override, "block length override (0 = 2.5*sqrt(n) rule)");
    analyze->add_option("--lambda", config.lambdas, "HP smoothing parameters")->delimiter(',');
    analyze->add_option("--min-phase", config.min_phase_months,
                        "minimum months between turning points");
    analyze->add_option("--refine-objective", refine_objective,
                        "argmax objective: demeaned or raw")
        ->check(CLI::IsMember({"demeaned", "raw"}));
    analyze->add_option("--out", analyze_out, "output directory");

    // simulate
    std::string sim_spec;
    std::string sim_out = ".";
    std::string sim_start = "2000-01";
    std::size_t sim_n = 0;
    std::uint64_t sim_seed = 0;
    auto* simulate = app.add_subcommand("simulate", "generate a synthetic series from a spec");
    simulate->add_option("spec", sim_spec, "generator spec JSON")->required();
    simulate->add_option("--n", sim_n, "number of months")->required();
    auto* seed_opt = simulate->add_option("--seed", sim_seed, "seed override");
    simulate->add_option("--start", sim_start, "first month (YYYY-MM)");
    simulate->add_option("--out", sim_out, "output directory");

    // filter
    std::string filter_input;
    std::string filter_out = ".";
    std::vector<double> filter_lambdas;
    auto* filt = app.add_subcommand("filter", "HP trend/cycle decomposition at given lambdas");
    filt->add_option("input", filter_input, "input CSV (date,value)")->required();
    filt->add_option("--lambda", filter_lambdas, "smoothing parameters")
        ->required()
        ->delimiter(',');
    filt->add_option("--out", filter_out, "output directory");

    // validate
    bool v_oracle = false, v_hp = false, v_lambda = false;
    std::string validate_out = ".";
    auto* validate = app.add_subcommand("validate", "run the built-in verification suites");
    validate->add_flag("--oracle", v_oracle, "subsampling brute-force equivalence");
    validate->add_flag("--hp", v_hp, "banded vs dense HP solve");
    validate->add_flag("--lambda-table", v_lambda, "lambda to cycle-length table");
    validate->add_option("--out", validate_out, "directory for the machine-readable summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (*analyze) {
            config.grid = cyclescope::FrequencyGrid::regular(grid_step, band_hi);
            config.b_override = static_cast<std::size_t>(b_override);
            config.refine_objective = refine_objective == "raw"
                                          ? cyclescope::RefineObjective::raw
                                          : cyclescope::RefineObjective::demeaned;
            return run_analyze(analyze_input, config, analyze_out);
        }
        if (*simulate) {
            return run_simulate(sim_spec, sim_n, sim_seed, seed_opt->count() > 0, sim_start,
                                sim_out);
        }
        if (*filt) {
            return run_filter(filter_input, filter_lambdas, filter_out);
        }
        if (*validate) {
            return run_validate(v_oracle, v_hp, v_lambda, validate_out);
        }
    } catch (const cyclescope::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}
