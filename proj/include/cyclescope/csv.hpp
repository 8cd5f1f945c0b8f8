#ifndef CYCLESCOPE_CSV_HPP
#define CYCLESCOPE_CSV_HPP

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclescope/series.hpp"

namespace cyclescope {

/// Input that fails validation (malformed rows, calendar gaps, bad numbers).
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

inline std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline double parse_number(const std::string& text, std::size_t row, std::size_t col) {
    const std::string t = strip(text);
    if (t.empty()) {
        throw InputError("row " + std::to_string(row) + ", column " + std::to_string(col) +
                         ": empty value");
    }
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0' || errno == ERANGE) {
        throw InputError("row " + std::to_string(row) + ", column " + std::to_string(col) +
                         ": '" + t + "' is not a number");
    }
    return v;
}

}  // namespace detail

/// Reads a `date,value` CSV: header row required, dates formatted YYYY-MM and
/// strictly consecutive month to month, all values finite.
inline MonthlySeries read_monthly_csv(const std::filesystem::path& path, std::string label = "") {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path.string() + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw InputError("'" + path.string() + "' is empty; expected a date,value header");
    }
    {
        const auto header = detail::split_csv_row(line);
        if (header.size() < 2 || detail::strip(header[0]) != "date" ||
            detail::strip(header[1]) != "value") {
            throw InputError("row 1: expected header 'date,value', got '" + line + "'");
        }
    }

    YearMonth start{};
    YearMonth expected{};
    std::vector<double> values;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (detail::strip(line).empty()) continue;
        const auto fields = detail::split_csv_row(line);
        if (fields.size() != 2) {
            throw InputError("row " + std::to_string(row) + ": expected 2 columns, got " +
                             std::to_string(fields.size()));
        }
        YearMonth ym;
        try {
            ym = parse_year_month(detail::strip(fields[0]));
        } catch (const std::invalid_argument& e) {
            throw InputError("row " + std::to_string(row) + ", column 1: " + e.what());
        }
        const double v = detail::parse_number(fields[1], row, 2);
        if (values.empty()) {
            start = ym;
        } else if (ym != expected) {
            throw InputError("row " + std::to_string(row) + ": months must be consecutive; expected " +
                             expected.str() + ", found " + ym.str());
        }
        expected = ym.plus_months(1);
        values.push_back(v);
    }
    if (values.empty()) {
        throw InputError("'" + path.string() + "' has a header but no data rows");
    }
    try {
        return MonthlySeries(start, std::move(values),
                             label.empty() ? path.stem().string() : std::move(label));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

/// Full-precision decimal formatting (round-trips a double exactly).
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Short human formatting for labels (column names, level keys).
inline std::string format_label(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

/// Writes `content` atomically: temp file in the same directory, then rename.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write '" + tmp.string() + "'");
        }
        out << content;
        if (!out.flush()) {
            throw std::runtime_error("failed writing '" + tmp.string() + "'");
        }
    }
    std::filesystem::rename(tmp, path);
}

inline void write_monthly_csv(const std::filesystem::path& path, const MonthlySeries& series) {
    std::string out = "date,value\n";
    for (std::size_t t = 1; t <= series.size(); ++t) {
        out += series.month_at(t).str();
        out += ',';
        out += format_double(series.values()[t - 1]);
        out += '\n';
    }
    write_file_atomic(path, out);
}

}  // namespace cyclescope

#endif
