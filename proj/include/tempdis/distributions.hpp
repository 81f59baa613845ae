#pragma once

namespace tempdis {

/// P(X > x) for X ~ chi-square(df). Equals exp(-x/2) at df = 2.
double chi_square_survival(double x, double df);

/// P(X > x) for X ~ F(df1, df2); 1.0 for x <= 0.
double f_survival(double x, double df1, double df2);

/// Two-sided p-value, 2*P(T > |t|) for T ~ Student-t(df).
double student_t_two_sided_p(double t, double df);

}  // namespace tempdis
