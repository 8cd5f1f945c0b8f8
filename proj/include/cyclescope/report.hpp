#ifndef CYCLESCOPE_REPORT_HPP
#define CYCLESCOPE_REPORT_HPP

#include <complex>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "cyclescope/csv.hpp"
#include "cyclescope/pipeline.hpp"
#include "cyclescope/series.hpp"
#include "cyclescope/synth.hpp"

namespace cyclescope {

inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a 64-bit digest of a byte string.
inline std::string fnv1a_digest(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), "fnv1a:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Digest of a series from its canonical CSV text, so file and in-memory
/// routes agree.
inline std::string digest_series(const MonthlySeries& series) {
    std::string text = "date,value\n";
    for (std::size_t t = 1; t <= series.size(); ++t) {
        text += series.month_at(t).str();
        text += ',';
        text += format_double(series.values()[t - 1]);
        text += '\n';
    }
    return fnv1a_digest(text);
}

/// Reproducibility envelope embedded in every output document.
struct RunManifest {
    std::string command;
    std::string input_file;    ///< basename only; paths are not part of identity
    std::string input_digest;
    std::uint64_t seed = 0;
    std::vector<std::string> outputs;  ///< basenames of files this run writes
};

inline nlohmann::json to_json(const std::complex<double>& z) {
    return {{"re", z.real()}, {"im", z.imag()}};
}

inline nlohmann::json to_json(const MonthlySeries& series) {
    return {{"label", series.label()},
            {"start", series.start().str()},
            {"values", series.values()}};
}

inline nlohmann::json to_json(const PipelineConfig& config) {
    return {{"log_transform", config.log_transform},
            {"trend_order", config.trend_order},
            {"gammas", config.gammas},
            {"scan_gamma", config.scan_gamma},
            {"grid_step", config.grid.step()},
            {"grid_size", config.grid.size()},
            {"b_override", config.b_override},
            {"lambdas", config.lambdas},
            {"min_phase_months", config.min_phase_months},
            {"refine_objective",
             config.refine_objective == RefineObjective::demeaned ? "demeaned" : "raw"}};
}

inline nlohmann::json to_json(const RunManifest& manifest, const PipelineConfig& config) {
    return {{"command", manifest.command},
            {"tool_version", kToolVersion},
            {"input_file", manifest.input_file},
            {"input_digest", manifest.input_digest},
            {"seed", manifest.seed},
            {"outputs", manifest.outputs},
            {"config", to_json(config)}};
}

inline nlohmann::json scan_to_json(const SignificanceScan& scan) {
    nlohmann::json points = nlohmann::json::array();
    for (std::size_t i = 0; i < scan.grid.size(); ++i) {
        nlohmann::json critical = nlohmann::json::object();
        nlohmann::json flags = nlohmann::json::object();
        for (std::size_t g = 0; g < scan.gammas.size(); ++g) {
            const std::string key = format_label(scan.gammas[g]);
            critical[key] = scan.critical[g][i];
            flags[key] = static_cast<bool>(scan.flags[g][i]);
        }
        points.push_back({{"psi", scan.grid.points[i]},
                          {"period_months", 2.0 * std::numbers::pi / scan.grid.points[i]},
                          {"statistic", scan.statistic[i]},
                          {"critical", critical},
                          {"flags", flags}});
    }
    return {{"b", scan.b}, {"gammas", scan.gammas}, {"points", points}};
}

inline nlohmann::json report_to_json(const PipelineReport& report, const RunManifest& manifest) {
    nlohmann::json intervals = nlohmann::json::array();
    for (const FrequencyInterval& band : report.intervals) {
        intervals.push_back({{"lo", band.lo}, {"hi", band.hi}});
    }

    nlohmann::json cycles = nlohmann::json::array();
    for (const CycleEstimate& c : report.cycles) {
        cycles.push_back({{"psi", c.psi},
                          {"period_months", c.period_months},
                          {"period_years", c.period_years},
                          {"coeff_filtered", to_json(c.coeff_filtered)},
                          {"coeff_original", to_json(c.coeff_original)},
                          {"amplitude", c.amplitude},
                          {"interval", {{"lo", c.interval_lo}, {"hi", c.interval_hi}}},
                          {"trend_band", c.period_years > 8.0}});
    }

    nlohmann::json hp = nlohmann::json::array();
    for (const HPResult& h : report.hp) {
        nlohmann::json entry = {{"lambda", h.lambda},
                                {"trend", h.decomposition.trend},
                                {"cycle", h.decomposition.cycle}};
        entry["cutoff_months"] =
            h.cutoff_months ? nlohmann::json(*h.cutoff_months) : nlohmann::json(nullptr);
        hp.push_back(entry);
    }

    nlohmann::json tps = nlohmann::json::array();
    for (const TurningPoint& tp : report.turning_points) {
        tps.push_back({{"index", tp.index},
                       {"date", tp.date.str()},
                       {"kind", tp.kind == TurningKind::peak ? "peak" : "trough"},
                       {"value", tp.value}});
    }

    return {{"provenance", to_json(manifest, report.config)},
            {"stages",
             {{"p", to_json(report.stage_p)},
              {"y", to_json(report.stage_y)},
              {"x", to_json(report.stage_x)}}},
            {"scan", scan_to_json(report.scan)},
            {"intervals", intervals},
            {"cycles", cycles},
            {"hp", hp},
            {"turning_points", tps}};
}

/// Tabular scan export: one row per grid point, one critical and one flag
/// column per confidence level.
inline std::string scan_to_csv(const SignificanceScan& scan) {
    std::string out = "psi,period_months,statistic";
    for (double g : scan.gammas) {
        out += ",crit_" + format_label(g);
    }
    for (double g : scan.gammas) {
        out += ",flag_" + format_label(g);
    }
    out += '\n';
    for (std::size_t i = 0; i < scan.grid.size(); ++i) {
        out += format_double(scan.grid.points[i]);
        out += ',' + format_double(2.0 * std::numbers::pi / scan.grid.points[i]);
        out += ',' + format_double(scan.statistic[i]);
        for (std::size_t g = 0; g < scan.gammas.size(); ++g) {
            out += ',' + format_double(scan.critical[g][i]);
        }
        for (std::size_t g = 0; g < scan.gammas.size(); ++g) {
            out += scan.flags[g][i] ? ",1" : ",0";
        }
        out += '\n';
    }
    return out;
}

/// Cycle traces per lambda, dated on the seasonally adjusted stage.
inline std::string hp_cycles_to_csv(const PipelineReport& report) {
    std::string out = "date";
    for (const HPResult& h : report.hp) {
        out += ",cycle_" + format_label(h.lambda);
    }
    out += '\n';
    for (std::size_t t = 1; t <= report.stage_y.size(); ++t) {
        out += report.stage_y.month_at(t).str();
        for (const HPResult& h : report.hp) {
            out += ',' + format_double(h.decomposition.cycle[t - 1]);
        }
        out += '\n';
    }
    return out;
}

/// Multi-lambda decomposition export: date, input, then trend/cycle per lambda.
inline std::string decomposition_to_csv(const MonthlySeries& input,
                                        const std::vector<HPResult>& results) {
    std::string out = "date,input";
    for (const HPResult& h : results) {
        out += ",trend_" + format_label(h.lambda) + ",cycle_" + format_label(h.lambda);
    }
    out += '\n';
    for (std::size_t t = 1; t <= input.size(); ++t) {
        out += input.month_at(t).str();
        out += ',' + format_double(input.values()[t - 1]);
        for (const HPResult& h : results) {
            out += ',' + format_double(h.decomposition.trend[t - 1]);
            out += ',' + format_double(h.decomposition.cycle[t - 1]);
        }
        out += '\n';
    }
    return out;
}

inline nlohmann::json to_json(const SyntheticSpec& spec) {
    nlohmann::json harmonics = nlohmann::json::array();
    for (const Harmonic& h : spec.harmonics) {
        harmonics.push_back({{"psi", h.psi}, {"a", h.a}, {"b", h.b}});
    }
    nlohmann::json seasonal = nlohmann::json::array();
    for (const SeasonalTerm& s : spec.seasonal) {
        seasonal.push_back({{"k", s.k}, {"c", s.c}, {"phase", s.phase}});
    }
    return {{"trend", spec.trend},
            {"harmonics", harmonics},
            {"seasonal", seasonal},
            {"ar1", spec.ar1},
            {"sigma", spec.sigma},
            {"volatility", spec.volatility},
            {"seed", spec.seed}};
}

inline SyntheticSpec synthetic_spec_from_json(const nlohmann::json& j) {
    SyntheticSpec spec;
    spec.trend = j.value("trend", std::vector<double>{});
    if (j.contains("harmonics")) {
        for (const auto& h : j.at("harmonics")) {
            spec.harmonics.push_back(
                {h.at("psi").get<double>(), h.value("a", 0.0), h.value("b", 0.0)});
        }
    }
    if (j.contains("seasonal")) {
        for (const auto& s : j.at("seasonal")) {
            spec.seasonal.push_back(
                {s.at("k").get<int>(), s.value("c", 0.0), s.value("phase", 0.0)});
        }
    }
    spec.ar1 = j.value("ar1", 0.0);
    spec.sigma = j.value("sigma", 0.0);
    spec.volatility = j.value("volatility", std::vector<double>{});
    spec.seed = j.value("seed", std::uint64_t{1});
    spec.validate();
    return spec;
}

/// Ground-truth sidecar for a simulated path: the spec echo plus the true
/// Fourier coefficient and amplitude per harmonic.
inline nlohmann::json truth_to_json(const SyntheticSpec& spec, const RunManifest& manifest) {
    nlohmann::json truths = nlohmann::json::array();
    for (const Harmonic& h : spec.harmonics) {
        truths.push_back({{"psi", h.psi},
                          {"coeff", to_json(h.coeff())},
                          {"abs_coeff", std::abs(h.coeff())},
                          {"amplitude", 4.0 * std::abs(h.coeff())},
                          {"period_months", 2.0 * std::numbers::pi / h.psi}});
    }
    return {{"provenance",
             {{"command", manifest.command},
              {"tool_version", kToolVersion},
              {"input_file", manifest.input_file},
              {"input_digest", manifest.input_digest},
              {"seed", manifest.seed},
              {"outputs", manifest.outputs}}},
            {"spec", to_json(spec)},
            {"harmonics", truths}};
}

}  // namespace cyclescope

#endif
