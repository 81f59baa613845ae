#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tempdis/series.hpp"

namespace tempdis {

/// Residual models of the three static disaggregation regressions:
/// stationary AR(1) (Chow-Lin), random walk (Fernandez), random walk with
/// AR(1) increments (Litterman).
enum class Method { ChowLin, Fernandez, Litterman };

Method parse_method(std::string_view name);  // throws "unknown method"
std::string method_name(Method m);

/// How the AR parameter is resolved for Chow-Lin / Litterman.
struct RhoPolicy {
    bool estimate = true;   // maximum-likelihood grid search
    double value = 0.0;     // used when estimate == false
};

/// Declarative description of one disaggregation model.
struct ModelSpec {
    Method method = Method::ChowLin;
    bool intercept = true;
    std::vector<std::string> indicator_names;
    std::vector<std::pair<int, int>> dummies;  // SD(from_year, to_year)
    RhoPolicy rho;                 // ignored for Fernandez
    bool nonnegative_rho = false;  // restrict the search to [0, 0.99]

    void validate() const;
};

struct Coefficient {
    std::string label;
    double estimate = 0.0;
    double std_error = 0.0;
    std::optional<double> t_stat;   // absent when std_error is 0
    std::optional<double> p_value;  // two-sided Student-t, df = n_years - k
};

enum class RhoMode { Estimated, Fixed, Fernandez };

struct FitResult {
    std::vector<Coefficient> coefficients;
    double rho = 0.0;   // reported as 1 for Fernandez (random-walk limit)
    RhoMode rho_mode = RhoMode::Fixed;
    double sigma2 = 0.0;           // innovation variance, df divisor n_L - k
    double log_likelihood = 0.0;   // concentrated Gaussian log-likelihood
    Series low_freq_residuals;     // annual u_L = y_L - X_L beta
    Series fitted_annual;          // X_L beta
    Series quarterly_estimate;     // constrained span plus extrapolated tail
    std::vector<double> whitened_residuals;  // L^{-1} u_L with V_L = L L'
    int n_years = 0;
    int n_regressors = 0;
    bool intercept = false;

    int df() const { return n_years - n_regressors; }
};

/// n_years x n_quarters annual-sum map: row y has ones in columns
/// 4y..4y+3; extrapolation columns beyond 4*n_years are zero.
Eigen::MatrixXd aggregation_matrix(int n_years, int n_quarters);

/// Quarterly disturbance covariance up to scale sigma^2:
///   ChowLin    V_ij = rho^|i-j| / (1 - rho^2)
///   Fernandez  V = (D'D)^-1, D the first-difference matrix
///   Litterman  V = (D'H(rho)'H(rho)D)^-1, H lower-bidiagonal (1, -rho)
Eigen::MatrixXd covariance_matrix(Method method, double rho, int n);

/// GLS regression of the annual constraint on annualized regressors and the
/// quarterly smoother/extrapolator. X rows are quarters starting at Q1 of
/// the first constraint year; rows beyond 4*n_years are extrapolated.
FitResult gls_fit_given_rho(const Series& y_annual, const Eigen::MatrixXd& X,
                            const std::vector<std::string>& labels,
                            Method method, double rho);

struct RhoSearchResult {
    double rho = 0.0;
    double log_likelihood = 0.0;
    std::vector<std::pair<double, double>> profile;  // coarse grid (rho, ll)
};

/// Maximizes the concentrated log-likelihood over the rho grid
/// {-0.99, ..., 0.99} (step 0.01) with local refinement to step 0.001.
/// Ties are broken by the smallest |rho|.
RhoSearchResult estimate_rho(const Series& y_annual, const Eigen::MatrixXd& X,
                             Method method, bool nonnegative = false);

/// Assembles the regressor matrix from the spec (intercept, indicators,
/// step dummies), resolves rho, and fits. Indicators are matched
/// positionally to spec.indicator_names and must cover the target span;
/// span_first must be Q1 of the first constraint year.
FitResult disaggregate(const ModelSpec& spec, const Series& y_annual,
                       const std::vector<Series>& indicators,
                       PeriodId span_first, PeriodId span_last);

}  // namespace tempdis
