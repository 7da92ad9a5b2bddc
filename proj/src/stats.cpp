#include "shopfloor/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "shopfloor/distributions.hpp"

namespace shopfloor::stats {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_groups(const std::vector<Sample>& groups, std::size_t min_n, const char* what) {
  if (groups.size() < 2) throw std::invalid_argument(std::string(what) + " needs at least 2 groups");
  for (const auto& g : groups) {
    if (g.size() < min_n) {
      throw std::invalid_argument(std::string(what) + " needs at least " + std::to_string(min_n) +
                                  " observations per group");
    }
  }
}

// F and p for an effect, with the 0/0 and x/0 cases pinned down.
void finish_effect(AnovaEffect& e, double ms_within, double ss_within, double df_within,
                   double ss_total) {
  e.ms = e.df > 0 ? e.ss / e.df : 0.0;
  if (ms_within > 0.0) {
    e.f = e.ms / ms_within;
    e.p = f_sf(e.f, e.df, df_within);
  } else if (e.ss > 0.0) {
    e.f = kInf;
    e.p = 0.0;
  } else {
    e.f = 0.0;
    e.p = 1.0;
  }
  e.eta_squared = ss_total > 0.0 ? e.ss / ss_total : 0.0;
  e.partial_eta_squared = (e.ss + ss_within) > 0.0 ? e.ss / (e.ss + ss_within) : 0.0;
}

}  // namespace

void SampleMatrix::check() const {
  if (labels.size() != groups.size()) throw std::invalid_argument("labels and groups differ in count");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].empty()) throw std::invalid_argument("group '" + labels[i] + "' is empty");
    if (!seen.insert(labels[i]).second) {
      throw std::invalid_argument("duplicate group label '" + labels[i] + "'");
    }
  }
}

double mean(std::span<const double> sample) {
  if (sample.empty()) throw std::invalid_argument("mean of an empty sample");
  double sum = 0.0;
  for (double x : sample) sum += x;
  return sum / static_cast<double>(sample.size());
}

Descriptives describe(std::span<const double> sample) {
  if (sample.size() < 2) throw std::invalid_argument("standard deviation needs n >= 2");
  Descriptives d;
  d.n = sample.size();
  d.mean = mean(sample);
  double ss = 0.0;
  for (double x : sample) ss += (x - d.mean) * (x - d.mean);
  d.sd = std::sqrt(ss / static_cast<double>(d.n - 1));
  return d;
}

KsResult ks_normality(std::span<const double> sample) {
  if (sample.size() < 5) throw std::invalid_argument("KS normality test needs n >= 5");
  const Descriptives desc = describe(sample);
  if (!(desc.sd > 0.0)) throw std::invalid_argument("KS normality test on a constant sample");
  Sample sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = normal_cdf((sorted[i] - desc.mean) / desc.sd);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  const double root_n = std::sqrt(n);
  return KsResult{d, kolmogorov_sf((root_n + 0.12 + 0.11 / root_n) * d)};
}

LeveneResult levene(const std::vector<Sample>& groups) {
  require_groups(groups, 2, "Levene's test");
  std::vector<Sample> deviations;
  deviations.reserve(groups.size());
  for (const auto& g : groups) {
    const double m = mean(g);
    Sample dev;
    dev.reserve(g.size());
    for (double x : g) dev.push_back(std::fabs(x - m));
    deviations.push_back(std::move(dev));
  }
  const AnovaResult a = anova_oneway(deviations);
  const AnovaEffect& between = a.effects.front();
  LeveneResult r;
  r.df1 = between.df;
  r.df2 = a.df_within;
  if (a.ss_within == 0.0 && between.ss == 0.0) {
    r.degenerate = true;
    r.w = 0.0;
    r.p = 1.0;
    return r;
  }
  r.w = between.f;
  r.p = between.p;
  return r;
}

const AnovaEffect& AnovaResult::effect(const std::string& name) const {
  for (const auto& e : effects) {
    if (e.name == name) return e;
  }
  throw std::invalid_argument("no ANOVA effect named '" + name + "'");
}

AnovaResult anova_oneway(const std::vector<Sample>& groups) {
  require_groups(groups, 2, "one-way ANOVA");
  std::size_t n_total = 0;
  double grand_sum = 0.0;
  for (const auto& g : groups) {
    n_total += g.size();
    for (double x : g) grand_sum += x;
  }
  const double grand = grand_sum / static_cast<double>(n_total);
  AnovaEffect between{"between"};
  AnovaResult r;
  for (const auto& g : groups) {
    const double m = mean(g);
    between.ss += static_cast<double>(g.size()) * (m - grand) * (m - grand);
    for (double x : g) {
      r.ss_within += (x - m) * (x - m);
      r.ss_total += (x - grand) * (x - grand);
    }
  }
  between.df = static_cast<double>(groups.size() - 1);
  r.df_within = static_cast<double>(n_total - groups.size());
  r.df_total = static_cast<double>(n_total - 1);
  r.ms_within = r.ss_within / r.df_within;
  finish_effect(between, r.ms_within, r.ss_within, r.df_within, r.ss_total);
  r.effects.push_back(between);
  return r;
}

AnovaResult anova_twoway(const std::vector<std::vector<Sample>>& cells) {
  const std::size_t a = cells.size();
  if (a < 2) throw std::invalid_argument("two-way ANOVA needs at least 2 levels of factor A");
  const std::size_t b = cells.front().size();
  if (b < 2) throw std::invalid_argument("two-way ANOVA needs at least 2 levels of factor B");
  const std::size_t n = cells.front().front().size();
  if (n < 2) throw std::invalid_argument("two-way ANOVA needs at least 2 observations per cell");
  for (const auto& row : cells) {
    if (row.size() != b) throw std::invalid_argument("two-way ANOVA needs a full factorial grid");
    for (const auto& cell : row) {
      if (cell.size() != n) throw std::invalid_argument("two-way ANOVA needs a balanced design");
    }
  }

  std::vector<std::vector<double>> cell_mean(a, std::vector<double>(b));
  std::vector<double> mean_a(a, 0.0);
  std::vector<double> mean_b(b, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      cell_mean[i][j] = mean(cells[i][j]);
      mean_a[i] += cell_mean[i][j] / static_cast<double>(b);
      mean_b[j] += cell_mean[i][j] / static_cast<double>(a);
      grand += cell_mean[i][j] / static_cast<double>(a * b);
    }
  }

  AnovaEffect fa{"A"};
  AnovaEffect fb{"B"};
  AnovaEffect fab{"AxB"};
  AnovaResult r;
  const double nd = static_cast<double>(n);
  for (std::size_t i = 0; i < a; ++i) fa.ss += b * nd * (mean_a[i] - grand) * (mean_a[i] - grand);
  for (std::size_t j = 0; j < b; ++j) fb.ss += a * nd * (mean_b[j] - grand) * (mean_b[j] - grand);
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      const double inter = cell_mean[i][j] - mean_a[i] - mean_b[j] + grand;
      fab.ss += nd * inter * inter;
      for (double x : cells[i][j]) {
        r.ss_within += (x - cell_mean[i][j]) * (x - cell_mean[i][j]);
        r.ss_total += (x - grand) * (x - grand);
      }
    }
  }
  fa.df = static_cast<double>(a - 1);
  fb.df = static_cast<double>(b - 1);
  fab.df = static_cast<double>((a - 1) * (b - 1));
  r.df_within = static_cast<double>(a * b * (n - 1));
  r.df_total = static_cast<double>(a * b * n - 1);
  r.ms_within = r.ss_within / r.df_within;
  for (AnovaEffect* e : {&fa, &fb, &fab}) {
    finish_effect(*e, r.ms_within, r.ss_within, r.df_within, r.ss_total);
    r.effects.push_back(*e);
  }
  return r;
}

const PairwiseComparison& TukeyResult::pair(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  for (const auto& p : pairs) {
    if (p.first == i && p.second == j) return p;
  }
  throw std::invalid_argument("no such pair in Tukey result");
}

TukeyResult tukey_hsd(const std::vector<double>& means, const std::vector<double>& sizes,
                      double ms_within, double df_within, double alpha) {
  if (means.size() < 2) throw std::invalid_argument("Tukey HSD needs k >= 2 groups");
  if (sizes.size() != means.size()) throw std::invalid_argument("means and sizes differ in count");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (!(df_within > 0.0)) throw std::invalid_argument("Tukey HSD needs df_within > 0");
  const int k = static_cast<int>(means.size());
  TukeyResult r;
  r.df_within = df_within;
  r.q_critical = studentized_range_quantile(1.0 - alpha, k, df_within);
  for (std::size_t i = 0; i < means.size(); ++i) {
    for (std::size_t j = i + 1; j < means.size(); ++j) {
      PairwiseComparison c;
      c.first = i;
      c.second = j;
      c.mean_difference = means[j] - means[i];
      const double se = std::sqrt(ms_within / 2.0 * (1.0 / sizes[i] + 1.0 / sizes[j]));
      const double diff = std::fabs(c.mean_difference);
      if (se > 0.0) {
        c.q = diff / se;
        c.p = 1.0 - studentized_range_cdf(c.q, k, df_within);
      } else {
        c.q = diff > 0.0 ? kInf : 0.0;
        c.p = diff > 0.0 ? 0.0 : 1.0;
      }
      c.significant = c.q > r.q_critical;
      r.pairs.push_back(c);
    }
  }
  return r;
}

TukeyResult tukey_hsd(const std::vector<Sample>& groups, double alpha) {
  const AnovaResult a = anova_oneway(groups);
  std::vector<double> means;
  std::vector<double> sizes;
  for (const auto& g : groups) {
    means.push_back(mean(g));
    sizes.push_back(static_cast<double>(g.size()));
  }
  return tukey_hsd(means, sizes, a.ms_within, a.df_within, alpha);
}

double bonferroni(double alpha, int m) {
  if (m < 1) throw std::invalid_argument("Bonferroni correction needs m >= 1");
  return alpha / m;
}

double pooled_t(std::span<const double> a, std::span<const double> b) {
  const Descriptives da = describe(a);
  const Descriptives db = describe(b);
  const double df = static_cast<double>(da.n + db.n - 2);
  const double pooled = ((da.n - 1) * da.sd * da.sd + (db.n - 1) * db.sd * db.sd) / df;
  const double se = std::sqrt(pooled * (1.0 / da.n + 1.0 / db.n));
  return (db.mean - da.mean) / se;
}

}  // namespace shopfloor::stats
