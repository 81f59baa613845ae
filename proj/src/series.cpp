#include "tempdis/series.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace tempdis {

namespace {

[[noreturn]] void bad(const std::string& msg) {
    throw std::invalid_argument(msg);
}

}  // namespace

PeriodId next_period(PeriodId p, Frequency f) {
    const int pp = periods_per_year(f);
    if (p.subperiod == pp) return {p.year + 1, 1};
    return {p.year, p.subperiod + 1};
}

PeriodId prev_period(PeriodId p, Frequency f) {
    const int pp = periods_per_year(f);
    if (p.subperiod == 1) return {p.year - 1, pp};
    return {p.year, p.subperiod - 1};
}

PeriodId add_periods(PeriodId p, Frequency f, int n) {
    const int pp = periods_per_year(f);
    // work on a zero-based linear index
    long idx = static_cast<long>(p.year) * pp + (p.subperiod - 1) + n;
    long year = idx >= 0 ? idx / pp : -((-idx + pp - 1) / pp);
    return {static_cast<int>(year), static_cast<int>(idx - year * pp) + 1};
}

int periods_between(PeriodId a, PeriodId b, Frequency f) {
    const int pp = periods_per_year(f);
    return (b.year - a.year) * pp + (b.subperiod - a.subperiod);
}

std::string format_period(PeriodId p, Frequency f) {
    char buf[32];
    if (f == Frequency::Annual) {
        std::snprintf(buf, sizeof buf, "%04d", p.year);
    } else {
        std::snprintf(buf, sizeof buf, "%04dQ%d", p.year, p.subperiod);
    }
    return buf;
}

std::pair<PeriodId, Frequency> parse_period(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == 0 || i > 6) bad("malformed period literal: '" + std::string(text) + "'");
    int year = 0;
    for (std::size_t j = 0; j < i; ++j) year = year * 10 + (text[j] - '0');
    if (i == text.size()) return {{year, 1}, Frequency::Annual};
    if ((text[i] == 'Q' || text[i] == 'q') && i + 2 == text.size() &&
        text[i + 1] >= '1' && text[i + 1] <= '4') {
        return {{year, text[i + 1] - '0'}, Frequency::Quarterly};
    }
    bad("malformed period literal: '" + std::string(text) + "'");
}

Series::Series(Frequency frequency, PeriodId start, std::vector<double> values)
    : frequency_(frequency), start_(start), values_(std::move(values)) {
    if (values_.empty()) bad("series must contain at least one value");
    const int pp = periods_per_year(frequency_);
    if (start_.subperiod < 1 || start_.subperiod > pp)
        bad("invalid start subperiod " + std::to_string(start_.subperiod));
    for (double v : values_) {
        if (!std::isfinite(v)) bad("series contains a non-finite value");
    }
}

PeriodId Series::end() const {
    return add_periods(start_, frequency_, static_cast<int>(values_.size()) - 1);
}

PeriodId Series::period_at(std::size_t i) const {
    return add_periods(start_, frequency_, static_cast<int>(i));
}

std::optional<std::size_t> Series::index_of(PeriodId p) const {
    const int d = periods_between(start_, p, frequency_);
    if (d < 0 || d >= static_cast<int>(values_.size())) return std::nullopt;
    return static_cast<std::size_t>(d);
}

double Series::value_at(PeriodId p) const {
    auto i = index_of(p);
    if (!i) bad("period " + format_period(p, frequency_) + " outside series span");
    return values_[*i];
}

Series annualize(const Series& q) {
    if (q.frequency() != Frequency::Quarterly)
        bad("annualize requires a quarterly series");
    // skip a partial leading year
    std::size_t i = 0;
    while (i < q.size() && q.period_at(i).subperiod != 1) ++i;
    std::vector<double> sums;
    int first_year = 0;
    while (i + 4 <= q.size()) {
        if (sums.empty()) first_year = q.period_at(i).year;
        sums.push_back(q[i] + q[i + 1] + q[i + 2] + q[i + 3]);
        i += 4;
    }
    if (sums.empty()) bad("no complete year in series span");
    return Series(Frequency::Annual, {first_year, 1}, std::move(sums));
}

Series pct_change_prev(const Series& s) {
    if (s.size() < 2) bad("growth rate needs at least two observations");
    std::vector<double> out(s.size() - 1);
    for (std::size_t t = 1; t < s.size(); ++t) {
        if (s[t - 1] == 0.0)
            bad("undefined growth rate at " +
                format_period(s.period_at(t), s.frequency()) + " (zero denominator)");
        out[t - 1] = 100.0 * (s[t] / s[t - 1] - 1.0);
    }
    return Series(s.frequency(), s.period_at(1), std::move(out));
}

Series pct_change_year_ago(const Series& q) {
    if (q.frequency() != Frequency::Quarterly)
        bad("year-on-year growth requires a quarterly series");
    if (q.size() < 5) bad("growth rate needs at least five observations");
    std::vector<double> out(q.size() - 4);
    for (std::size_t t = 4; t < q.size(); ++t) {
        if (q[t - 4] == 0.0)
            bad("undefined growth rate at " +
                format_period(q.period_at(t), q.frequency()) + " (zero denominator)");
        out[t - 4] = 100.0 * (q[t] / q[t - 4] - 1.0);
    }
    return Series(Frequency::Quarterly, q.period_at(4), std::move(out));
}

}  // namespace tempdis
