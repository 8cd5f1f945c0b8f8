#ifndef CYCLESCOPE_SERIES_HPP
#define CYCLESCOPE_SERIES_HPP

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cyclescope {

/// Calendar month on the proleptic Gregorian calendar, month in 1..12.
struct YearMonth {
    int year = 2000;
    int month = 1;

    /// Month shifted by `k` (k may be negative).
    YearMonth plus_months(long k) const {
        long m0 = static_cast<long>(year) * 12 + (month - 1) + k;
        long y = m0 / 12;
        long m = m0 % 12;
        if (m < 0) {
            m += 12;
            y -= 1;
        }
        return YearMonth{static_cast<int>(y), static_cast<int>(m) + 1};
    }

    /// Signed number of months from `other` to this.
    long months_since(const YearMonth& other) const {
        return (static_cast<long>(year) - other.year) * 12 + (month - other.month);
    }

    std::string str() const {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
        return buf;
    }

    friend bool operator==(const YearMonth& a, const YearMonth& b) {
        return a.year == b.year && a.month == b.month;
    }
    friend bool operator!=(const YearMonth& a, const YearMonth& b) { return !(a == b); }
};

/// Parses "YYYY-MM". Throws std::invalid_argument on malformed input.
inline YearMonth parse_year_month(const std::string& text) {
    int y = 0, m = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%4d-%2d%c", &y, &m, &tail) != 2 || text.size() != 7 ||
        text[4] != '-' || m < 1 || m > 12) {
        throw std::invalid_argument("bad date '" + text + "': expected YYYY-MM with month 01-12");
    }
    return YearMonth{y, m};
}

/// Contiguous monthly observations. Index t = 1..n maps to start + (t-1) months.
/// Every value must be finite; constructors enforce this.
class MonthlySeries {
public:
    MonthlySeries() = default;

    MonthlySeries(YearMonth start, std::vector<double> values, std::string label = "")
        : start_(start), values_(std::move(values)), label_(std::move(label)) {
        if (values_.empty()) {
            throw std::invalid_argument("series '" + label_ + "' must contain at least one value");
        }
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!std::isfinite(values_[i])) {
                throw std::invalid_argument("series '" + label_ + "' has non-finite value at position " +
                                            std::to_string(i + 1));
            }
        }
    }

    const YearMonth& start() const { return start_; }
    const std::vector<double>& values() const { return values_; }
    const std::string& label() const { return label_; }
    std::size_t size() const { return values_.size(); }

    /// Calendar month of 1-based position t.
    YearMonth month_at(std::size_t t) const { return start_.plus_months(static_cast<long>(t) - 1); }

    /// Elementwise natural log. Throws if any value is not strictly positive.
    MonthlySeries log() const {
        std::vector<double> out(values_.size());
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!(values_[i] > 0.0)) {
                throw std::invalid_argument("log transform requires positive values; value at " +
                                            month_at(i + 1).str() + " is " + std::to_string(values_[i]));
            }
            out[i] = std::log(values_[i]);
        }
        return MonthlySeries(start_, std::move(out), label_.empty() ? "log" : "log(" + label_ + ")");
    }

private:
    YearMonth start_{};
    std::vector<double> values_{};
    std::string label_{};
};

}  // namespace cyclescope

#endif
