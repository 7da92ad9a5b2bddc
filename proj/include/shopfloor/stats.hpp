#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace shopfloor::stats {

using Sample = std::vector<double>;

/// Labelled groups, one observation per replication.
struct SampleMatrix {
  std::vector<std::string> labels;
  std::vector<Sample> groups;

  /// Throws std::invalid_argument on empty groups, duplicate labels or a
  /// label/group count mismatch.
  void check() const;
};

struct Descriptives {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;  // n - 1 denominator
};

double mean(std::span<const double> sample);

/// Mean and sample standard deviation. Requires n >= 2.
Descriptives describe(std::span<const double> sample);

struct KsResult {
  double d = 0.0;
  double p = 0.0;
};

/// One-sample Kolmogorov-Smirnov test against a normal with the sample's
/// own mean and sd. p from the asymptotic Kolmogorov distribution at
/// (sqrt(n) + 0.12 + 0.11/sqrt(n)) * D. Requires n >= 5 and sd > 0.
KsResult ks_normality(std::span<const double> sample);

struct LeveneResult {
  double w = 0.0;
  double df1 = 0.0;
  double df2 = 0.0;
  double p = 1.0;
  /// Every absolute deviation equal within groups and across them: W is
  /// 0/0 and reported as W = 0, p = 1.
  bool degenerate = false;
};

/// Mean-centred Levene test: one-way ANOVA on |x - group mean|.
LeveneResult levene(const std::vector<Sample>& groups);

struct AnovaEffect {
  std::string name;
  double ss = 0.0;
  double df = 0.0;
  double ms = 0.0;
  double f = 0.0;
  double p = 1.0;
  double eta_squared = 0.0;
  double partial_eta_squared = 0.0;
};

struct AnovaResult {
  std::vector<AnovaEffect> effects;  // between-group effects
  double ss_within = 0.0;
  double df_within = 0.0;
  double ms_within = 0.0;
  double ss_total = 0.0;
  double df_total = 0.0;

  const AnovaEffect& effect(const std::string& name) const;
};

/// One-way between-groups ANOVA; the single effect is named "between".
AnovaResult anova_oneway(const std::vector<Sample>& groups);

/// Balanced two-way ANOVA. `cells[a][b]` holds the replications for level a
/// of factor A and level b of factor B. Effects: "A", "B", "AxB".
AnovaResult anova_twoway(const std::vector<std::vector<Sample>>& cells);

struct PairwiseComparison {
  std::size_t first = 0;
  std::size_t second = 0;
  double mean_difference = 0.0;  // mean(second) - mean(first)
  double q = 0.0;
  double p = 1.0;
  bool significant = false;
};

struct TukeyResult {
  double q_critical = 0.0;
  double df_within = 0.0;
  std::vector<PairwiseComparison> pairs;

  const PairwiseComparison& pair(std::size_t i, std::size_t j) const;
};

/// Tukey HSD (Tukey-Kramer standard error for unequal n) at level alpha.
TukeyResult tukey_hsd(const std::vector<Sample>& groups, double alpha);

/// Tukey HSD from group means and sizes with an externally supplied error
/// term, e.g. marginal means of a two-way design.
TukeyResult tukey_hsd(const std::vector<double>& means, const std::vector<double>& sizes,
                      double ms_within, double df_within, double alpha);

/// alpha / m.
double bonferroni(double alpha, int m);

/// Pooled-variance two-sample t statistic, mean(b) - mean(a) over its SE.
double pooled_t(std::span<const double> a, std::span<const double> b);

}  // namespace shopfloor::stats
