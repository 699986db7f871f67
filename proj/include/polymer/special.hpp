#pragma once

#include <cstddef>

namespace polymer::stat {

/// log Γ(x), x > 0.
double log_gamma(double x);

/// log B(a,b) = log Γ(a) + log Γ(b) − log Γ(a+b).
double log_beta(double a, double b);

/// Regularized lower incomplete gamma P(s,x), s > 0, x ≥ 0.
/// Series for x < s+1, continued fraction otherwise.
double reg_inc_gamma(double s, double x);

/// Regularized incomplete beta I_x(a,b), a,b > 0, x in [0,1].
/// Continued fraction, with the symmetry I_x(a,b) = 1 − I_{1−x}(b,a).
double reg_inc_beta(double a, double b, double x);

/// Quantile of the chi-square distribution with df degrees of freedom.
double chi2_quantile(double p, int df);

/// Asymptotic one-sample KS critical value at the 1% level.
double ks_one_sample_critical(std::size_t n);

/// Asymptotic two-sample KS critical value at the 1% level.
double ks_two_sample_critical(std::size_t n1, std::size_t n2);

} // namespace polymer::stat
