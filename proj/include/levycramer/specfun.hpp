#pragma once

// Self-contained special functions backing the closed-form laws:
// log-gamma, regularized incomplete gamma P(a,x), regularized
// incomplete beta I_x(a,b).  Implemented in-repo (Lanczos, series and
// continued fractions) so every language target of this project
// produces matching digits.

namespace levycramer::specfun {

// log Gamma(x), x > 0.  Relative error below 1e-12 on [0.1, 100].
double log_gamma(double x);

// Regularized lower incomplete gamma P(a,x) = gamma(a,x)/Gamma(a),
// a > 0, x >= 0.  Series for x < a+1, continued fraction otherwise.
double reg_inc_gamma(double a, double x);

// Regularized incomplete beta I_x(a,b), a,b > 0, 0 <= x <= 1.
double reg_inc_beta(double a, double b, double x);

// log Beta(a,b) = log_gamma(a) + log_gamma(b) - log_gamma(a+b).
double log_beta(double a, double b);

}  // namespace levycramer::specfun
