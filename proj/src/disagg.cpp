#include "tempdis/disagg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "tempdis/distributions.hpp"
#include "tempdis/indicator_prep.hpp"

namespace tempdis {

namespace {

[[noreturn]] void bad(const std::string& msg) {
    throw std::invalid_argument(msg);
}

void check_rho_range(double rho) {
    if (std::abs(rho) > 0.999) bad("rho out of admissible range [-0.999, 0.999]");
}

Eigen::MatrixXd chowlin_covariance(double rho, int n) {
    Eigen::MatrixXd v(n, n);
    const double scale = 1.0 / (1.0 - rho * rho);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            v(i, j) = std::pow(rho, i - j) * scale;
            v(j, i) = v(i, j);
        }
    return v;
}

// (H(rho) * D)' (H(rho) * D): the inverse covariance of the random-walk
// models. D is the first-difference matrix (1 on the diagonal, -1 below),
// H applies the AR(1) filter to the increments; rho = 0 gives Fernandez.
Eigen::MatrixXd difference_precision(double rho, int n) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = 1.0;
        if (i >= 1) m(i, i - 1) = -1.0 - rho;
        if (i >= 2) m(i, i - 2) = rho;
    }
    return m.transpose() * m;
}

struct CoreFit {
    Eigen::VectorXd beta;
    Eigen::MatrixXd cov_beta_unit;  // (X_L' V_L^-1 X_L)^-1, scale by sigma2
    Eigen::VectorXd fitted_annual;
    Eigen::VectorXd residuals_annual;
    Eigen::VectorXd whitened;
    Eigen::VectorXd quarterly;
    double sigma2 = 0.0;
    double log_likelihood = 0.0;
};

CoreFit core_fit(const Eigen::VectorXd& y_l, const Eigen::MatrixXd& x, Method method,
                 double rho) {
    const int n = static_cast<int>(x.rows());
    const int n_l = static_cast<int>(y_l.size());
    const int k = static_cast<int>(x.cols());
    if (n_l <= k)
        bad("insufficient degrees of freedom: " + std::to_string(n_l) + " years for " +
            std::to_string(k) + " regressors");

    const Eigen::MatrixXd c = aggregation_matrix(n_l, n);

    // Z = V C'. For Chow-Lin V is known in closed form; for the random-walk
    // models solve the banded precision system instead of inverting it.
    Eigen::MatrixXd z;
    if (method == Method::ChowLin) {
        check_rho_range(rho);
        z = chowlin_covariance(rho, n) * c.transpose();
    } else {
        if (method == Method::Litterman) check_rho_range(rho);
        const double r = method == Method::Fernandez ? 0.0 : rho;
        const Eigen::MatrixXd a = difference_precision(r, n);
        Eigen::LLT<Eigen::MatrixXd> allt(a);
        if (allt.info() != Eigen::Success)
            throw std::runtime_error("covariance not positive definite");
        z = allt.solve(c.transpose());
    }

    Eigen::MatrixXd v_l = c * z;
    v_l = 0.5 * (v_l + v_l.transpose()).eval();

    Eigen::LLT<Eigen::MatrixXd> llt(v_l);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("covariance not positive definite");

    const Eigen::MatrixXd x_l = c * x;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x_l);
    if (qr.rank() < k) throw std::runtime_error("collinear regressors");

    const Eigen::MatrixXd s = llt.solve(x_l);           // V_L^-1 X_L
    const Eigen::MatrixXd g = x_l.transpose() * s;      // X_L' V_L^-1 X_L
    Eigen::LLT<Eigen::MatrixXd> gllt(g);
    if (gllt.info() != Eigen::Success) throw std::runtime_error("collinear regressors");

    CoreFit fit;
    fit.beta = gllt.solve(s.transpose() * y_l);
    fit.cov_beta_unit = gllt.solve(Eigen::MatrixXd::Identity(k, k));
    fit.fitted_annual = x_l * fit.beta;
    fit.residuals_annual = y_l - fit.fitted_annual;

    const Eigen::VectorXd vinv_u = llt.solve(fit.residuals_annual);
    fit.sigma2 = std::max(fit.residuals_annual.dot(vinv_u), 0.0) / (n_l - k);
    fit.quarterly = x * fit.beta + z * vinv_u;
    fit.whitened = llt.matrixL().solve(fit.residuals_annual);

    const double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    fit.log_likelihood = -0.5 * n_l * (std::log(2.0 * std::numbers::pi) +
                                       std::log(fit.sigma2) + 1.0) -
                         0.5 * logdet;
    return fit;
}

void require_annual(const Series& y) {
    if (y.frequency() != Frequency::Annual) bad("constraint series must be annual");
}

}  // namespace

Method parse_method(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    if (s == "chowlin" || s == "chow-lin") return Method::ChowLin;
    if (s == "fernandez") return Method::Fernandez;
    if (s == "litterman") return Method::Litterman;
    bad("unknown method '" + std::string(name) + "'");
}

std::string method_name(Method m) {
    switch (m) {
        case Method::ChowLin: return "chowlin";
        case Method::Fernandez: return "fernandez";
        case Method::Litterman: return "litterman";
    }
    return "?";
}

void ModelSpec::validate() const {
    if (!intercept && indicator_names.empty() && dummies.empty())
        bad("model has no regressors");
    if (method != Method::Fernandez && !rho.estimate &&
        (rho.value < -0.999 || rho.value > 0.999))
        bad("fixed rho " + std::to_string(rho.value) + " outside [-0.999, 0.999]");
}

Eigen::MatrixXd aggregation_matrix(int n_years, int n_quarters) {
    if (n_years < 1) bad("aggregation needs at least one year");
    if (n_quarters < 4 * n_years)
        bad("insufficient quarters: " + std::to_string(n_quarters) + " for " +
            std::to_string(n_years) + " years");
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n_years, n_quarters);
    for (int y = 0; y < n_years; ++y)
        for (int q = 0; q < 4; ++q) c(y, 4 * y + q) = 1.0;
    return c;
}

Eigen::MatrixXd covariance_matrix(Method method, double rho, int n) {
    if (n < 1) bad("covariance order must be at least 1");
    if (method == Method::ChowLin) {
        check_rho_range(rho);
        return chowlin_covariance(rho, n);
    }
    if (method == Method::Litterman) check_rho_range(rho);
    const double r = method == Method::Fernandez ? 0.0 : rho;
    const Eigen::MatrixXd a = difference_precision(r, n);
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("covariance not positive definite");
    return llt.solve(Eigen::MatrixXd::Identity(n, n));
}

FitResult gls_fit_given_rho(const Series& y_annual, const Eigen::MatrixXd& X,
                            const std::vector<std::string>& labels, Method method,
                            double rho) {
    require_annual(y_annual);
    if (labels.size() != static_cast<std::size_t>(X.cols()))
        bad("label count does not match regressor count");

    const int n_l = static_cast<int>(y_annual.size());
    const int k = static_cast<int>(X.cols());
    const Eigen::VectorXd y_l =
        Eigen::Map<const Eigen::VectorXd>(y_annual.values().data(), n_l);
    CoreFit core = core_fit(y_l, X, method, rho);

    FitResult res{
        .coefficients = {},
        .rho = method == Method::Fernandez ? 1.0 : rho,
        .rho_mode = method == Method::Fernandez ? RhoMode::Fernandez : RhoMode::Fixed,
        .sigma2 = core.sigma2,
        .log_likelihood = core.log_likelihood,
        .low_freq_residuals =
            Series(Frequency::Annual, y_annual.start(),
                   {core.residuals_annual.data(), core.residuals_annual.data() + n_l}),
        .fitted_annual =
            Series(Frequency::Annual, y_annual.start(),
                   {core.fitted_annual.data(), core.fitted_annual.data() + n_l}),
        .quarterly_estimate =
            Series(Frequency::Quarterly, {y_annual.start().year, 1},
                   {core.quarterly.data(), core.quarterly.data() + core.quarterly.size()}),
        .whitened_residuals = {core.whitened.data(), core.whitened.data() + n_l},
        .n_years = n_l,
        .n_regressors = k,
        .intercept = !labels.empty() && labels.front() == "intercept",
    };

    res.coefficients.reserve(k);
    for (int i = 0; i < k; ++i) {
        Coefficient co;
        co.label = labels[i];
        co.estimate = core.beta(i);
        co.std_error = std::sqrt(std::max(core.sigma2 * core.cov_beta_unit(i, i), 0.0));
        if (co.std_error > 0.0) {
            co.t_stat = co.estimate / co.std_error;
            co.p_value = student_t_two_sided_p(*co.t_stat, n_l - k);
        }
        res.coefficients.push_back(std::move(co));
    }
    return res;
}

RhoSearchResult estimate_rho(const Series& y_annual, const Eigen::MatrixXd& X,
                             Method method, bool nonnegative) {
    require_annual(y_annual);
    if (method == Method::Fernandez)
        bad("rho not applicable to the Fernandez model");

    const int n_l = static_cast<int>(y_annual.size());
    const int k = static_cast<int>(X.cols());
    if (n_l <= k)
        bad("insufficient degrees of freedom: " + std::to_string(n_l) + " years for " +
            std::to_string(k) + " regressors");
    {
        const Eigen::MatrixXd x_l = aggregation_matrix(n_l, static_cast<int>(X.rows())) * X;
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x_l);
        if (qr.rank() < k) throw std::runtime_error("collinear regressors");
    }

    const Eigen::VectorXd y_l =
        Eigen::Map<const Eigen::VectorXd>(y_annual.values().data(), n_l);

    bool have_best = false;
    double best_rho = 0.0;
    double best_ll = -std::numeric_limits<double>::infinity();
    const auto consider = [&](double rho, double ll) {
        if (std::isnan(ll)) return;
        if (!have_best || ll > best_ll ||
            (ll == best_ll && std::abs(rho) < std::abs(best_rho))) {
            have_best = true;
            best_rho = rho;
            best_ll = ll;
        }
    };
    const auto evaluate = [&](double rho) {
        try {
            return core_fit(y_l, X, method, rho).log_likelihood;
        } catch (const std::exception&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };

    RhoSearchResult out;
    const int lo = nonnegative ? 0 : -99;
    for (int i = lo; i <= 99; ++i) {
        const double rho = i / 100.0;
        const double ll = evaluate(rho);
        out.profile.emplace_back(rho, ll);
        consider(rho, ll);
    }
    if (!have_best) throw std::runtime_error("likelihood evaluation failed on the rho grid");

    // refine around the coarse optimum at step 0.001
    const int center = static_cast<int>(std::lround(best_rho * 1000.0));
    for (int j = std::max(center - 9, lo * 10); j <= std::min(center + 9, 990); ++j) {
        const double rho = j / 1000.0;
        consider(rho, evaluate(rho));
    }

    out.rho = best_rho;
    out.log_likelihood = best_ll;
    return out;
}

FitResult disaggregate(const ModelSpec& spec, const Series& y_annual,
                       const std::vector<Series>& indicators, PeriodId span_first,
                       PeriodId span_last) {
    spec.validate();
    require_annual(y_annual);
    if (indicators.size() != spec.indicator_names.size())
        bad("expected " + std::to_string(spec.indicator_names.size()) +
            " indicator series, got " + std::to_string(indicators.size()));

    const int first_year = y_annual.start().year;
    const int last_year = y_annual.end().year;
    if (span_first != PeriodId{first_year, 1})
        bad("target span must start at " + format_period({first_year, 1}, Frequency::Quarterly));
    if (span_last < PeriodId{last_year, 4})
        bad("target span must cover all constraint years (through " +
            format_period({last_year, 4}, Frequency::Quarterly) + ")");
    const int n = periods_between(span_first, span_last, Frequency::Quarterly) + 1;

    const int k = static_cast<int>(spec.intercept) +
                  static_cast<int>(spec.indicator_names.size()) +
                  static_cast<int>(spec.dummies.size());
    Eigen::MatrixXd x(n, k);
    std::vector<std::string> labels;
    labels.reserve(k);
    int col = 0;
    if (spec.intercept) {
        x.col(col++).setOnes();
        labels.emplace_back("intercept");
    }
    for (std::size_t i = 0; i < indicators.size(); ++i) {
        const Series& ind = indicators[i];
        if (ind.frequency() != Frequency::Quarterly)
            bad("indicator '" + spec.indicator_names[i] + "' must be quarterly");
        const auto offset = ind.index_of(span_first);
        if (!offset || !ind.contains(span_last))
            bad("indicator '" + spec.indicator_names[i] + "' does not cover target span");
        for (int t = 0; t < n; ++t) x(t, col) = ind[*offset + t];
        labels.push_back(spec.indicator_names[i]);
        ++col;
    }
    for (const auto& [from, to] : spec.dummies) {
        const std::string name =
            "SD(" + std::to_string(from) + "," + std::to_string(to) + ")";
        if (to < span_first.year || from > span_last.year)
            bad("dummy outside span: " + name);
        const Series d = step_dummy(from, to, span_first, static_cast<std::size_t>(n));
        for (int t = 0; t < n; ++t) x(t, col) = d[t];
        labels.push_back(name);
        ++col;
    }

    double rho = 0.0;
    RhoMode mode = RhoMode::Fernandez;
    if (spec.method != Method::Fernandez) {
        if (spec.rho.estimate) {
            rho = estimate_rho(y_annual, x, spec.method, spec.nonnegative_rho).rho;
            mode = RhoMode::Estimated;
        } else {
            rho = spec.rho.value;
            mode = RhoMode::Fixed;
        }
    }

    FitResult res = gls_fit_given_rho(y_annual, x, labels, spec.method, rho);
    res.rho_mode = mode;
    return res;
}

}  // namespace tempdis
