#include "shopfloor/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace shopfloor::stats {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("incomplete beta continued fraction did not converge");
}

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

struct GaussLegendre {
  static constexpr int kPoints = 16;
  double nodes[kPoints];
  double weights[kPoints];

  GaussLegendre() {
    // Newton iteration on P_n from the Chebyshev initial guesses.
    const int n = kPoints;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = pk;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::fabs(dx) < 1e-16) break;
      }
      nodes[i] = x;
      weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

const GaussLegendre& gauss_legendre() {
  static const GaussLegendre rule;
  return rule;
}

// Composite 16-point Gauss-Legendre over `panels` equal panels of [a, b].
template <typename F>
double integrate(const F& f, double a, double b, int panels) {
  const auto& gl = gauss_legendre();
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    double sum = 0.0;
    for (int i = 0; i < GaussLegendre::kPoints; ++i) {
      sum += gl.weights[i] * f(mid + 0.5 * width * gl.nodes[i]);
    }
    total += 0.5 * width * sum;
  }
  return total;
}

// P(range of k iid standard normals <= w); phi(z) is below 1e-16
// outside [-8.5, 8.5].
double normal_range_cdf(double w, int k) {
  if (w <= 0.0) return 0.0;
  const auto integrand = [w, k](double z) {
    const double inner = normal_cdf(z) - normal_cdf(z - w);
    if (inner <= 0.0) return 0.0;
    return normal_pdf(z) * std::pow(inner, k - 1);
  };
  const double value = k * integrate(integrand, -8.5, 8.5, 12);
  return std::min(1.0, std::max(0.0, value));
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("incomplete beta needs a, b > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double f_cdf(double f, double d1, double d2) {
  if (!(d1 > 0.0 && d2 > 0.0)) throw std::invalid_argument("F degrees of freedom must be positive");
  if (f <= 0.0) return 0.0;
  if (std::isinf(f)) return 1.0;
  return incomplete_beta(0.5 * d1, 0.5 * d2, d1 * f / (d1 * f + d2));
}

double f_sf(double f, double d1, double d2) {
  if (!(d1 > 0.0 && d2 > 0.0)) throw std::invalid_argument("F degrees of freedom must be positive");
  if (f <= 0.0) return 1.0;
  if (std::isinf(f)) return 0.0;
  return incomplete_beta(0.5 * d2, 0.5 * d1, d2 / (d2 + d1 * f));
}

double t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw std::invalid_argument("t degrees of freedom must be positive");
  if (std::isinf(t)) return 0.0;
  return incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
}

double t_quantile_upper(double upper, double df) {
  if (!(upper > 0.0 && upper < 0.5)) throw std::invalid_argument("upper tail must lie in (0, 0.5)");
  double lo = 0.0;
  double hi = 1.0;
  while (0.5 * t_two_sided_p(hi, df) > upper) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (0.5 * t_two_sided_p(mid, df) > upper ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double kolmogorov_sf(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // Small-lambda series converges fast where the alternating one does not.
    const double c = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double sum = 0.0;
    for (int k = 1; k <= 50; ++k) {
      const double term = std::exp(-(2.0 * k - 1) * (2.0 * k - 1) * c);
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    const double cdf = std::sqrt(2.0 * std::numbers::pi) / lambda * sum;
    return std::min(1.0, std::max(0.0, 1.0 - cdf));
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-17) break;
  }
  return std::min(1.0, std::max(0.0, 2.0 * sum));
}

double studentized_range_cdf(double q, int k, double df) {
  if (k < 2) throw std::invalid_argument("studentized range needs k >= 2");
  if (!(df > 0.0)) throw std::invalid_argument("studentized range needs df > 0");
  if (q <= 0.0) return 0.0;
  if (std::isinf(df) || df > 25000.0) return normal_range_cdf(q, k);

  // s = sqrt(chi2_df / df); integrate its density against the
  // infinite-df range CDF at q * s.
  const double log_norm = 0.5 * df * std::log(df) - std::lgamma(0.5 * df) -
                          (0.5 * df - 1.0) * std::log(2.0);
  const auto density = [df, log_norm](double s) {
    if (s <= 0.0) return 0.0;
    return std::exp(log_norm + (df - 1.0) * std::log(s) - 0.5 * df * s * s);
  };
  const double spread = 1.0 / std::sqrt(2.0 * df);
  double lo = 0.0;
  double hi = 1.0 + 14.0 * spread;
  if (df >= 30.0) lo = std::max(0.0, 1.0 - 14.0 * spread);
  if (df < 10.0) hi = std::max(hi, 8.0 + 40.0 / df);
  const auto integrand = [&](double s) {
    const double dens = density(s);
    return dens == 0.0 ? 0.0 : dens * normal_range_cdf(q * s, k);
  };
  const double value = integrate(integrand, lo, hi, df < 10.0 ? 96 : 12);
  return std::min(1.0, std::max(0.0, value));
}

double studentized_range_quantile(double p, int k, double df) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("probability must lie in (0, 1)");
  double lo = 0.0;
  double hi = 4.0;
  while (studentized_range_cdf(hi, k, df) < p) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) throw std::runtime_error("studentized range quantile did not bracket");
  }
  for (int i = 0; i < 100 && hi - lo > 1e-9; ++i) {
    const double mid = 0.5 * (lo + hi);
    (studentized_range_cdf(mid, k, df) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace shopfloor::stats
