#include "tempdis/indicator_prep.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace tempdis {

namespace {

[[noreturn]] void bad(const std::string& msg) {
    throw std::invalid_argument(msg);
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) bad("degenerate series (zero variance)");
    return sab / std::sqrt(saa * sbb);
}

}  // namespace

void ArrearsEvent::validate(double balance_rel_tol) const {
    double accrued = 0.0;
    for (const auto& a : accruals) {
        if (a.allocation < 0.0)
            bad("event '" + label + "': negative accrual allocation");
        const double wsum = a.weights[0] + a.weights[1] + a.weights[2] + a.weights[3];
        if (std::abs(wsum - 1.0) > 1e-9)
            bad("event '" + label + "': weights for year " + std::to_string(a.year) +
                " sum to " + std::to_string(wsum) + ", expected 1");
        for (double w : a.weights)
            if (w < 0.0) bad("event '" + label + "': negative weight");
        accrued += a.allocation;
    }
    double disbursed = 0.0;
    for (const auto& d : disbursements) {
        if (d.amount < 0.0) bad("event '" + label + "': negative disbursement");
        disbursed += d.amount;
    }
    const double scale = std::max({std::abs(accrued), std::abs(disbursed), 1.0});
    if (std::abs(disbursed - accrued) > balance_rel_tol * scale)
        bad("event '" + label + "': disbursed total " + std::to_string(disbursed) +
            " does not balance accrued total " + std::to_string(accrued));
}

std::vector<ArrearsEvent> load_arrears_events(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    if (!doc.is_array()) throw std::runtime_error(path + ": expected a JSON array of events");

    std::vector<ArrearsEvent> events;
    for (const auto& rec : doc) {
        ArrearsEvent ev;
        ev.label = rec.value("label", "");
        for (const auto& d : rec.value("disbursements", nlohmann::json::array())) {
            auto [p, f] = parse_period(d.at("period").get<std::string>());
            if (f != Frequency::Quarterly)
                throw std::runtime_error(path + ": disbursement period must be quarterly");
            ev.disbursements.push_back({p, d.at("amount").get<double>()});
        }
        for (const auto& a : rec.value("accruals", nlohmann::json::array())) {
            ArrearsAccrual ac;
            ac.year = a.at("year").get<int>();
            ac.allocation = a.at("allocation").get<double>();
            const auto& w = a.at("weights");
            if (!w.is_array() || w.size() != 4)
                throw std::runtime_error(path + ": accrual weights must have 4 entries");
            for (int k = 0; k < 4; ++k) ac.weights[k] = w[k].get<double>();
            ev.accruals.push_back(ac);
        }
        ev.validate();
        events.push_back(std::move(ev));
    }
    return events;
}

Series step_dummy(int from_year, int to_year, PeriodId span_start, std::size_t n_quarters) {
    if (from_year > to_year) bad("invalid dummy range SD(" + std::to_string(from_year) +
                                 "," + std::to_string(to_year) + ")");
    if (n_quarters == 0) bad("empty span for step dummy");
    std::vector<double> v(n_quarters, 0.0);
    for (std::size_t i = 0; i < n_quarters; ++i) {
        const int y = add_periods(span_start, Frequency::Quarterly, static_cast<int>(i)).year;
        if (y >= from_year && y <= to_year) v[i] = 1.0;
    }
    return Series(Frequency::Quarterly, span_start, std::move(v));
}

Series net_arrears(const Series& raw, const ArrearsEvent& event) {
    std::vector<double> v(raw.values());
    for (const auto& d : event.disbursements) {
        auto i = raw.index_of(d.quarter);
        if (!i)
            bad("event '" + event.label + "': disbursement outside series span (" +
                format_period(d.quarter, Frequency::Quarterly) + ")");
        v[*i] -= d.amount;
    }
    return Series(raw.frequency(), raw.start(), std::move(v));
}

Series impute_accruals(const Series& netted, const ArrearsEvent& event) {
    std::vector<double> v(netted.values());
    for (const auto& a : event.accruals) {
        const PeriodId q1{a.year, 1};
        const PeriodId q4{a.year, 4};
        auto i1 = netted.index_of(q1);
        if (!i1 || !netted.contains(q4))
            bad("event '" + event.label + "': accrual year outside series span (" +
                std::to_string(a.year) + ")");
        for (int k = 0; k < 4; ++k) v[*i1 + k] += a.allocation * a.weights[k];
    }
    return Series(netted.frequency(), netted.start(), std::move(v));
}

Series adjust_for_arrears(const Series& raw, const std::vector<ArrearsEvent>& events) {
    Series out = raw;
    for (const auto& ev : events) {
        ev.validate();
        out = impute_accruals(net_arrears(out, ev), ev);
    }
    return out;
}

IndicatorQuality indicator_quality(const Series& indicator, const Series& constraint) {
    if (constraint.frequency() != Frequency::Annual)
        bad("constraint must be an annual series");
    const Series annual_ind = annualize(indicator);

    const int first = std::max(annual_ind.start().year, constraint.start().year);
    const int last = std::min(annual_ind.end().year, constraint.end().year);
    const int n = last - first + 1;
    if (n < 3) bad("insufficient overlap: " + std::to_string(n < 0 ? 0 : n) +
                   " common years, need at least 3");

    std::vector<double> ind(n), con(n);
    for (int j = 0; j < n; ++j) {
        ind[j] = annual_ind.value_at({first + j, 1});
        con[j] = constraint.value_at({first + j, 1});
        if (con[j] == 0.0) bad("zero constraint year " + std::to_string(first + j));
    }

    IndicatorQuality q;
    q.first_common_year = first;
    q.n_common_years = n;
    q.correlation = pearson(ind, con);
    q.per_year_coverage.resize(n);
    double mean_cov = 0.0, tot_ind = 0.0, tot_con = 0.0;
    for (int j = 0; j < n; ++j) {
        q.per_year_coverage[j] = 100.0 * ind[j] / con[j];
        mean_cov += q.per_year_coverage[j];
        tot_ind += ind[j];
        tot_con += con[j];
    }
    q.coverage_rate_pct = mean_cov / n;
    q.coverage_totals_pct = 100.0 * tot_ind / tot_con;
    return q;
}

}  // namespace tempdis
