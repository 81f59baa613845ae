#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tempdis/disagg.hpp"
#include "tempdis/series.hpp"

namespace tempdis {

struct RSquaredF {
    double r_squared = 0.0;
    std::optional<double> f_stat;  // absent for a perfect (zero-RSS) fit
    std::optional<double> p_value;
};

/// R^2 and F of observed vs fitted annual values in original units.
/// Centered TSS with an intercept, uncentered without one.
RSquaredF r2_and_f(const std::vector<double>& y, const std::vector<double>& fitted,
                   int k, bool intercept);

/// DW = sum (e_t - e_{t-1})^2 / sum e_t^2.
double durbin_watson(const std::vector<double>& residuals);

struct JarqueBera {
    double stat = 0.0;
    double p_value = 0.0;  // chi-square(2) survival, exp(-JB/2)
};
JarqueBera jarque_bera(const std::vector<double>& residuals);

/// Variance-ratio heteroscedasticity test: H = (last m squared residuals) /
/// (first m squared residuals), m = floor(n/3), p from F(m, m).
struct HetRatio {
    double stat = 0.0;
    double p_value = 0.0;
    int m = 0;
};
HetRatio het_ratio_test(const std::vector<double>& residuals);

struct LjungBox {
    double stat = 0.0;
    double p_value = 0.0;  // chi-square survival with `lags` df
    int lags = 0;
};
LjungBox ljung_box(const std::vector<double>& residuals, int max_lag = 7);

/// Per-coefficient (t, p) recomputed from the fit; absent entries mark
/// zero standard errors.
std::vector<std::pair<std::optional<double>, std::optional<double>>> coef_t_tests(
    const FitResult& fit);

/// Growth-rate agreement between an indicator and the disaggregated series
/// on their common span. Discrepancies are estimate minus indicator; the
/// max field keeps the sign of the largest absolute difference.
struct MovementStats {
    double corr_qopq = 0.0;
    double corr_qosq = 0.0;
    double rmse_qopq = 0.0;
    double rmse_qosq = 0.0;
    double max_discrepancy_qopq = 0.0;
    double max_discrepancy_qosq = 0.0;
};
MovementStats movement_stats(const Series& indicator, const Series& estimate);

struct DiagnosticsOptions {
    int ljung_box_lags = 7;
    bool whitened = true;  // run residual tests on GLS-whitened residuals
};

/// The full Table-2 battery for one fitted model. Statistics that are
/// undefined for the data at hand (zero residuals, series too short for the
/// requested lags) are reported as absent rather than failing the run.
struct DiagnosticsReport {
    double r_squared = 0.0;
    double standard_error = 0.0;  // sqrt(sigma2), regression S.E.
    std::optional<double> f_stat, f_p;
    std::optional<double> durbin_watson;
    std::optional<double> jarque_bera_stat, jarque_bera_p;
    std::optional<double> h_stat, h_p;
    std::optional<int> h_m;
    std::optional<double> ljung_box_stat, ljung_box_p;
    int ljung_box_lags = 0;
    bool whitened = true;
};

DiagnosticsReport run_diagnostics(const FitResult& fit, const Series& y_annual,
                                  const DiagnosticsOptions& options = {});

}  // namespace tempdis
