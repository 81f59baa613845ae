#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tempdis {

enum class Frequency { Annual, Quarterly };

constexpr int periods_per_year(Frequency f) {
    return f == Frequency::Annual ? 1 : 4;
}

/// Calendar position of one observation: a year plus a subperiod index
/// (always 1 for annual data, 1..4 for quarters). Ordering is lexicographic
/// on (year, subperiod).
struct PeriodId {
    int year = 0;
    int subperiod = 1;

    auto operator<=>(const PeriodId&) const = default;
};

PeriodId next_period(PeriodId p, Frequency f);
PeriodId prev_period(PeriodId p, Frequency f);
PeriodId add_periods(PeriodId p, Frequency f, int n);

/// Signed number of steps from `a` to `b` at frequency `f` (b - a).
int periods_between(PeriodId a, PeriodId b, Frequency f);

/// "1999" for annual periods, "1999Q3" for quarterly ones.
std::string format_period(PeriodId p, Frequency f);

/// Parses a period literal, inferring the frequency from its shape.
/// Throws std::invalid_argument on malformed input.
std::pair<PeriodId, Frequency> parse_period(std::string_view text);

/// A contiguous, gap-free run of finite values at a single frequency.
/// Immutable after construction; operations below return new objects.
class Series {
public:
    Series(Frequency frequency, PeriodId start, std::vector<double> values);

    Frequency frequency() const { return frequency_; }
    PeriodId start() const { return start_; }
    PeriodId end() const;
    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

    PeriodId period_at(std::size_t i) const;
    std::optional<std::size_t> index_of(PeriodId p) const;
    bool contains(PeriodId p) const { return index_of(p).has_value(); }
    double value_at(PeriodId p) const;

private:
    Frequency frequency_;
    PeriodId start_;
    std::vector<double> values_;
};

/// Sums quarters into calendar years (flow aggregation). Only complete
/// Q1..Q4 years contribute; partial leading/trailing years are dropped.
/// Throws if the span contains no complete year.
Series annualize(const Series& q);

/// Percent change on the previous period, 100*(x_t/x_{t-1} - 1).
Series pct_change_prev(const Series& s);

/// Percent change on the same quarter a year earlier, 100*(x_t/x_{t-4} - 1).
Series pct_change_year_ago(const Series& q);

}  // namespace tempdis
