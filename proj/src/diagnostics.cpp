#include "tempdis/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tempdis/distributions.hpp"

namespace tempdis {

namespace {

[[noreturn]] void bad(const std::string& msg) {
    throw std::invalid_argument(msg);
}

double mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const double ma = mean(a), mb = mean(b);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) bad("degenerate series (zero variance)");
    return sab / std::sqrt(saa * sbb);
}

}  // namespace

RSquaredF r2_and_f(const std::vector<double>& y, const std::vector<double>& fitted,
                   int k, bool intercept) {
    const int n = static_cast<int>(y.size());
    if (fitted.size() != y.size()) bad("observed/fitted length mismatch");
    if (n <= k) bad("insufficient degrees of freedom");

    double rss = 0.0;
    for (int i = 0; i < n; ++i) rss += (y[i] - fitted[i]) * (y[i] - fitted[i]);

    double tss = 0.0;
    if (intercept) {
        const double my = mean(y);
        for (double v : y) tss += (v - my) * (v - my);
    } else {
        for (double v : y) tss += v * v;
    }
    if (tss == 0.0) bad("degenerate constraint series (zero total sum of squares)");

    RSquaredF out;
    out.r_squared = 1.0 - rss / tss;
    const int num_df = intercept ? k - 1 : k;
    if (rss > 0.0 && num_df > 0) {
        out.f_stat = (out.r_squared / num_df) / ((1.0 - out.r_squared) / (n - k));
        out.p_value = f_survival(*out.f_stat, num_df, n - k);
    }
    return out;
}

double durbin_watson(const std::vector<double>& residuals) {
    if (residuals.size() < 2) bad("Durbin-Watson needs at least 2 residuals");
    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t < residuals.size(); ++t) {
        den += residuals[t] * residuals[t];
        if (t >= 1) {
            const double d = residuals[t] - residuals[t - 1];
            num += d * d;
        }
    }
    if (den == 0.0) bad("degenerate residuals (all zero)");
    return num / den;
}

JarqueBera jarque_bera(const std::vector<double>& residuals) {
    const std::size_t n = residuals.size();
    if (n < 4) bad("Jarque-Bera needs at least 4 residuals");
    const double m = mean(residuals);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : residuals) {
        const double d = v - m;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if (m2 == 0.0) bad("degenerate residuals (zero variance)");

    const double skew = m3 / std::pow(m2, 1.5);
    const double kurt = m4 / (m2 * m2);
    JarqueBera out;
    out.stat = n / 6.0 * (skew * skew + (kurt - 3.0) * (kurt - 3.0) / 4.0);
    out.p_value = chi_square_survival(out.stat, 2.0);
    return out;
}

HetRatio het_ratio_test(const std::vector<double>& residuals) {
    const int n = static_cast<int>(residuals.size());
    if (n < 6) bad("heteroscedasticity ratio needs at least 6 residuals");
    const int m = n / 3;
    double head = 0.0, tail = 0.0;
    for (int i = 0; i < m; ++i) {
        head += residuals[i] * residuals[i];
        tail += residuals[n - m + i] * residuals[n - m + i];
    }
    if (head == 0.0) bad("degenerate residuals (zero head sum of squares)");
    HetRatio out;
    out.stat = tail / head;
    out.p_value = f_survival(out.stat, m, m);
    out.m = m;
    return out;
}

LjungBox ljung_box(const std::vector<double>& residuals, int max_lag) {
    const int n = static_cast<int>(residuals.size());
    if (max_lag < 1) bad("Ljung-Box needs at least one lag");
    if (n <= max_lag + 1) bad("lag too large: " + std::to_string(max_lag) +
                              " for " + std::to_string(n) + " residuals");
    const double m = mean(residuals);
    double c0 = 0.0;
    for (double v : residuals) c0 += (v - m) * (v - m);
    if (c0 == 0.0) bad("degenerate residuals (zero variance)");

    LjungBox out;
    out.lags = max_lag;
    for (int j = 1; j <= max_lag; ++j) {
        double cj = 0.0;
        for (int t = j; t < n; ++t) cj += (residuals[t] - m) * (residuals[t - j] - m);
        const double rj = cj / c0;
        out.stat += rj * rj / (n - j);
    }
    out.stat *= n * (n + 2.0);
    out.p_value = chi_square_survival(out.stat, max_lag);
    return out;
}

std::vector<std::pair<std::optional<double>, std::optional<double>>> coef_t_tests(
    const FitResult& fit) {
    if (fit.df() < 1) bad("no residual degrees of freedom for t tests");
    std::vector<std::pair<std::optional<double>, std::optional<double>>> out;
    out.reserve(fit.coefficients.size());
    for (const auto& c : fit.coefficients) {
        if (c.std_error > 0.0) {
            const double t = c.estimate / c.std_error;
            out.emplace_back(t, student_t_two_sided_p(t, fit.df()));
        } else {
            out.emplace_back(std::nullopt, std::nullopt);
        }
    }
    return out;
}

MovementStats movement_stats(const Series& indicator, const Series& estimate) {
    if (indicator.frequency() != Frequency::Quarterly ||
        estimate.frequency() != Frequency::Quarterly)
        bad("movement statistics need quarterly series");
    const PeriodId first = std::max(indicator.start(), estimate.start());
    const PeriodId last = std::min(indicator.end(), estimate.end());
    const int n = periods_between(first, last, Frequency::Quarterly) + 1;
    if (n < 9) bad("common span too short: " + std::to_string(n < 0 ? 0 : n) +
                   " quarters, need at least 9");

    const auto slice = [&](const Series& s) {
        const std::size_t off = *s.index_of(first);
        std::vector<double> v(s.values().begin() + off, s.values().begin() + off + n);
        return Series(Frequency::Quarterly, first, std::move(v));
    };
    const Series ind = slice(indicator);
    const Series est = slice(estimate);

    const auto compare = [](const Series& a, const Series& b, double& corr, double& rmse,
                            double& maxd) {
        corr = pearson(b.values(), a.values());
        double ss = 0.0;
        maxd = 0.0;
        for (std::size_t i = 0; i < a.values().size(); ++i) {
            const double d = b[i] - a[i];  // estimate minus indicator
            ss += d * d;
            if (std::abs(d) > std::abs(maxd)) maxd = d;
        }
        rmse = std::sqrt(ss / a.values().size());
    };

    MovementStats out;
    compare(pct_change_prev(ind), pct_change_prev(est), out.corr_qopq, out.rmse_qopq,
            out.max_discrepancy_qopq);
    compare(pct_change_year_ago(ind), pct_change_year_ago(est), out.corr_qosq,
            out.rmse_qosq, out.max_discrepancy_qosq);
    return out;
}

DiagnosticsReport run_diagnostics(const FitResult& fit, const Series& y_annual,
                                  const DiagnosticsOptions& options) {
    if (y_annual.size() != fit.fitted_annual.size() ||
        y_annual.start() != fit.fitted_annual.start())
        bad("constraint series does not match the fit");

    DiagnosticsReport rep;
    rep.whitened = options.whitened;
    rep.ljung_box_lags = options.ljung_box_lags;
    rep.standard_error = std::sqrt(fit.sigma2);

    const RSquaredF rf = r2_and_f(y_annual.values(), fit.fitted_annual.values(),
                                  fit.n_regressors, fit.intercept);
    rep.r_squared = rf.r_squared;
    rep.f_stat = rf.f_stat;
    rep.f_p = rf.p_value;

    const std::vector<double>& e =
        options.whitened ? fit.whitened_residuals : fit.low_freq_residuals.values();

    // Degenerate residual vectors (perfect fits, short toy samples) leave the
    // affected statistic absent instead of aborting the whole report.
    try {
        rep.durbin_watson = durbin_watson(e);
    } catch (const std::invalid_argument&) {
    }
    try {
        const JarqueBera jb = jarque_bera(e);
        rep.jarque_bera_stat = jb.stat;
        rep.jarque_bera_p = jb.p_value;
    } catch (const std::invalid_argument&) {
    }
    try {
        const HetRatio h = het_ratio_test(e);
        rep.h_stat = h.stat;
        rep.h_p = h.p_value;
        rep.h_m = h.m;
    } catch (const std::invalid_argument&) {
    }
    try {
        const LjungBox lb = ljung_box(e, options.ljung_box_lags);
        rep.ljung_box_stat = lb.stat;
        rep.ljung_box_p = lb.p_value;
    } catch (const std::invalid_argument&) {
    }
    return rep;
}

}  // namespace tempdis
