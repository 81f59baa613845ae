#pragma once

#include <array>
#include <string>
#include <vector>

#include "tempdis/series.hpp"

namespace tempdis {

struct ArrearsDisbursement {
    PeriodId quarter;  // where the back-payment was recorded in the source
    double amount = 0.0;
};

struct ArrearsAccrual {
    int year = 0;
    double allocation = 0.0;           // annual amount to impute
    std::array<double, 4> weights{};   // quarterly split, sums to 1
};

/// One delayed wage-agreement episode: the quarters where arrears were
/// actually disbursed, and the accrual years (with quarterly weights) the
/// amounts belong to. Disbursed and accrued totals must balance.
struct ArrearsEvent {
    std::string label;
    std::vector<ArrearsDisbursement> disbursements;
    std::vector<ArrearsAccrual> accruals;

    /// Throws if a weights vector does not sum to 1 (1e-9) or the disbursed
    /// total differs from the accrued total beyond `balance_rel_tol`.
    void validate(double balance_rel_tol = 1e-6) const;
};

/// Loads the JSON events file: an array of records with `label`,
/// `disbursements` [{period, amount}] and `accruals` [{year, allocation,
/// weights[4]}]. Events are validated on load.
std::vector<ArrearsEvent> load_arrears_events(const std::string& path);

/// SD(from_year, to_year): 1.0 in every quarter of the years in range,
/// 0.0 elsewhere on the given span.
Series step_dummy(int from_year, int to_year, PeriodId span_start,
                  std::size_t n_quarters);

/// Subtracts each recorded disbursement from its quarter.
Series net_arrears(const Series& raw, const ArrearsEvent& event);

/// Adds allocation*weight_k to quarter k of each accrual year.
Series impute_accruals(const Series& netted, const ArrearsEvent& event);

/// Sequentially nets and re-imputes every event. Balanced events preserve
/// the full-span total.
Series adjust_for_arrears(const Series& raw, const std::vector<ArrearsEvent>& events);

struct IndicatorQuality {
    double correlation = 0.0;        // Pearson on annual levels, common span
    double coverage_rate_pct = 0.0;  // mean of yearly 100*(indicator/constraint)
    double coverage_totals_pct = 0.0;  // alternative: 100*(sum ind / sum constr)
    std::vector<double> per_year_coverage;
    int first_common_year = 0;
    int n_common_years = 0;
};

/// Assesses a quarterly indicator against the annual constraint over their
/// common complete years (at least 3 required).
IndicatorQuality indicator_quality(const Series& indicator, const Series& constraint);

}  // namespace tempdis
