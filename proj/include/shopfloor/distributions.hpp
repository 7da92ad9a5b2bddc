#pragma once

namespace shopfloor::stats {

double normal_cdf(double x);

/// Regularized incomplete beta I_x(a, b) by Lentz's continued fraction.
double incomplete_beta(double a, double b, double x);

/// P(F <= f) for an F(d1, d2) variable.
double f_cdf(double f, double d1, double d2);
/// P(F > f), evaluated directly so tiny p-values keep their precision.
double f_sf(double f, double d1, double d2);

/// Two-sided p-value of a t statistic with `df` degrees of freedom.
double t_two_sided_p(double t, double df);

/// Upper-tail quantile: t such that P(T > t) = upper.
double t_quantile_upper(double upper, double df);

/// Kolmogorov distribution survival function P(K > lambda).
double kolmogorov_sf(double lambda);

/// CDF of the studentized range for k means and df error degrees of
/// freedom (df = infinity allowed). Evaluated by adaptive quadrature of the
/// double integral.
double studentized_range_cdf(double q, int k, double df);

/// q such that studentized_range_cdf(q, k, df) = p.
double studentized_range_quantile(double p, int k, double df);

}  // namespace shopfloor::stats
