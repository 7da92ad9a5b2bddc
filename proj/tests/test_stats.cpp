#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "shopfloor/distributions.hpp"
#include "shopfloor/stats.hpp"

using namespace shopfloor::stats;
using doctest::Approx;

// Reference values below were computed with scipy 1.15 / statsmodels.

TEST_CASE("regularized incomplete beta") {
  CHECK(incomplete_beta(2.5, 3.5, 0.4) == Approx(0.4869041915261176).epsilon(1e-12));
  CHECK(incomplete_beta(0.5, 7.0, 0.02) == Approx(0.39863362384560364).epsilon(1e-12));
  CHECK(incomplete_beta(30.0, 40.0, 0.45) == Approx(0.6447480085585666).epsilon(1e-12));
  CHECK(incomplete_beta(2.0, 3.0, 0.0) == 0.0);
  CHECK(incomplete_beta(2.0, 3.0, 1.0) == 1.0);
  CHECK_THROWS_AS(incomplete_beta(0.0, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("F distribution") {
  CHECK(f_sf(3.5, 2, 10) == Approx(0.07042962777237427).epsilon(1e-12));
  CHECK(f_sf(1.5, 1, 4) == Approx(0.2878641347266907).epsilon(1e-12));
  CHECK(f_sf(120.0, 4, 95) == Approx(2.9290878902139792e-36).epsilon(1e-9));
  CHECK(f_cdf(0.8, 3, 20) == Approx(0.49159535395610876).epsilon(1e-12));
  CHECK(f_sf(0.0, 2, 3) == 1.0);
  CHECK(f_sf(std::numeric_limits<double>::infinity(), 2, 3) == 0.0);
}

TEST_CASE("t distribution") {
  CHECK(t_two_sided_p(2.1, 15) == Approx(0.05305525615204276).epsilon(1e-12));
  CHECK(t_two_sided_p(-0.3, 4) == Approx(0.7791214282774597).epsilon(1e-12));
  CHECK(t_quantile_upper(0.025, 10) == Approx(2.2281388519649385).epsilon(1e-10));
  CHECK(t_quantile_upper(0.005, 95) == Approx(2.6285756707827432).epsilon(1e-10));
}

TEST_CASE("Kolmogorov distribution on both sides of the series switch") {
  CHECK(kolmogorov_sf(0.3) == Approx(0.9999906941986655).epsilon(1e-12));
  CHECK(kolmogorov_sf(0.5) == Approx(0.9639452436648751).epsilon(1e-12));
  CHECK(kolmogorov_sf(1.0) == Approx(0.26999967167735456).epsilon(1e-12));
  CHECK(kolmogorov_sf(1.18) == Approx(0.1234538094297657).epsilon(1e-12));
  CHECK(kolmogorov_sf(1.36) == Approx(0.049485876755377876).epsilon(1e-12));
  CHECK(kolmogorov_sf(2.0) == Approx(0.0006709252557796953).epsilon(1e-10));
  CHECK(kolmogorov_sf(0.0) == 1.0);
}

TEST_CASE("studentized range") {
  CHECK(studentized_range_cdf(3.5, 4, 20) == Approx(0.9050415494536981).epsilon(1e-8));
  CHECK(studentized_range_cdf(2.0, 2, 5) == Approx(0.7835627707303147).epsilon(1e-8));
  CHECK(studentized_range_cdf(4.2, 5, std::numeric_limits<double>::infinity()) ==
        Approx(0.97515878446217).epsilon(1e-8));
  CHECK(studentized_range_quantile(0.95, 3, 12) == Approx(3.772928965726967).epsilon(1e-7));
  CHECK(studentized_range_quantile(0.99, 5, 95) == Approx(4.736904764370979).epsilon(1e-7));
  CHECK(studentized_range_quantile(0.95, 6, 114) == Approx(4.099489337086921).epsilon(1e-7));
  CHECK(studentized_range_quantile(1.0 - 0.05 / 3, 5, 95) ==
        Approx(4.496148854147861).epsilon(1e-7));
  // Published tables give 3.77 for k = 3, df = 12, alpha = .05.
  CHECK(std::fabs(studentized_range_quantile(0.95, 3, 12) - 3.77) < 0.01);
  // With two groups q^2 / 2 is F(1, df).
  const double q = 2.7;
  CHECK(1.0 - studentized_range_cdf(q, 2, 18) == Approx(f_sf(q * q / 2.0, 1, 18)).epsilon(1e-8));
}

TEST_CASE("descriptives") {
  const Sample x{2, 4, 4, 4, 5, 5, 7, 9};
  const auto d = describe(x);
  CHECK(d.n == 8);
  CHECK(d.mean == 5.0);
  CHECK(d.sd == Approx(std::sqrt(32.0 / 7.0)).epsilon(1e-15));
  CHECK_THROWS_AS(describe(Sample{1.0}), std::invalid_argument);
  CHECK_THROWS_AS(mean(Sample{}), std::invalid_argument);
}

TEST_CASE("KS normality with estimated parameters") {
  const Sample x{2.1, 3.4, 1.9, 5.6, 4.4, 3.3, 2.8, 4.9, 3.1, 3.9, 2.2, 4.0};
  const auto r = ks_normality(x);
  CHECK(r.d == Approx(0.11515125917923058).epsilon(1e-12));
  CHECK(r.p == Approx(0.9951126947735158).epsilon(1e-10));
  CHECK_THROWS_AS(ks_normality(Sample{1, 2, 3, 4}), std::invalid_argument);
  CHECK_THROWS_AS(ks_normality(Sample{3, 3, 3, 3, 3}), std::invalid_argument);
}

namespace {
const std::vector<Sample> kGroups = {
    {4.1, 5.2, 6.3, 5.5, 4.8}, {6.1, 7.4, 6.9, 8.0, 7.2}, {5.0, 5.1, 4.9, 5.3, 5.2, 4.7}};
}

TEST_CASE("Levene (mean-centred)") {
  const auto r = levene(kGroups);
  CHECK(r.w == Approx(2.0163451559733843).epsilon(1e-12));
  CHECK(r.p == Approx(0.17269933448842315).epsilon(1e-10));
  CHECK(r.df1 == 2);
  CHECK(r.df2 == 13);
  CHECK_FALSE(r.degenerate);

  // Identical values within each group: every deviation is zero.
  const auto flat = levene({{1, 1, 1}, {5, 5, 5}});
  CHECK(flat.degenerate);
  CHECK(flat.w == 0.0);
  CHECK(flat.p == 1.0);
}

TEST_CASE("one-way ANOVA") {
  SUBCASE("hand case") {
    const auto a = anova_oneway({{1, 2, 3}, {2, 3, 4}});
    const auto& e = a.effect("between");
    CHECK(std::fabs(e.f - 1.5) < 1e-10);
    CHECK(e.df == 1);
    CHECK(a.df_within == 4);
    CHECK(e.ss == Approx(1.5));
    CHECK(a.ss_within == Approx(4.0));
  }
  SUBCASE("reference") {
    const auto a = anova_oneway(kGroups);
    const auto& e = a.effects.front();
    CHECK(e.f == Approx(18.879455079736037).epsilon(1e-12));
    CHECK(e.p == Approx(0.00014282423700788684).epsilon(1e-9));
    CHECK(e.eta_squared == Approx(e.ss / a.ss_total));
    CHECK(a.ss_total == Approx(e.ss + a.ss_within).epsilon(1e-12));
  }
  SUBCASE("identical groups give F = 0") {
    const auto a = anova_oneway({{1, 2, 3}, {1, 2, 3}});
    CHECK(a.effects.front().f == 0.0);
    CHECK(a.effects.front().p == 1.0);
  }
  SUBCASE("zero within-group variance") {
    const auto a = anova_oneway({{1, 1}, {2, 2}});
    CHECK(std::isinf(a.effects.front().f));
    CHECK(a.effects.front().p == 0.0);
  }
  SUBCASE("F equals t squared for two groups") {
    const Sample g1{4.1, 5.2, 6.3, 5.5, 4.8};
    const Sample g2{6.1, 7.4, 6.9, 8.0, 7.2};
    const double t = pooled_t(g1, g2);
    CHECK(std::fabs(t - 4.038162837081587) < 1e-9);
    CHECK(std::fabs(anova_oneway({g1, g2}).effects.front().f - t * t) < 1e-9);
  }
  CHECK_THROWS_AS(anova_oneway({{1, 2, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(anova_oneway({{1, 2}, {3}}), std::invalid_argument);
}

TEST_CASE("two-way ANOVA") {
  const std::vector<std::vector<Sample>> cells = {
      {{3.1, 4.2, 3.8}, {5.0, 5.9, 6.1}, {7.2, 6.8, 7.9}},
      {{2.0, 2.6, 3.1}, {6.3, 7.1, 6.6}, {9.8, 10.4, 9.1}}};
  const auto a = anova_twoway(cells);
  CHECK(a.effect("A").ss == Approx(2.72222222222223076).epsilon(1e-12));
  CHECK(a.effect("B").ss == Approx(87.92444444444434737).epsilon(1e-12));
  CHECK(a.effect("AxB").ss == Approx(9.83111111111130320).epsilon(1e-12));
  CHECK(a.ss_within == Approx(3.70666666666666789).epsilon(1e-12));
  CHECK(a.effect("A").f == Approx(8.81294964028779582).epsilon(1e-10));
  CHECK(a.effect("B").f == Approx(142.32374100719403032).epsilon(1e-10));
  CHECK(a.effect("AxB").f == Approx(15.91366906474850751).epsilon(1e-10));
  CHECK(a.effect("A").p == Approx(0.01173033150097573).epsilon(1e-9));
  CHECK(a.effect("AxB").p == Approx(0.00042132468991500).epsilon(1e-9));
  CHECK(a.df_within == 12);
  const double sum = a.effect("A").ss + a.effect("B").ss + a.effect("AxB").ss + a.ss_within;
  CHECK(std::fabs(sum - a.ss_total) < 1e-9);
  const auto& b = a.effect("B");
  CHECK(b.partial_eta_squared == Approx(b.ss / (b.ss + a.ss_within)));

  CHECK_THROWS_AS(anova_twoway({{{1, 2}, {3, 4}}, {{1, 2}, {3, 4, 5}}}), std::invalid_argument);
  CHECK_THROWS_AS(anova_twoway({{{1, 2}, {3, 4}}, {{1, 2}}}), std::invalid_argument);
}

TEST_CASE("Tukey HSD") {
  const auto t = tukey_hsd(kGroups, 0.05);
  CHECK(t.pair(0, 1).p == Approx(6.3642554602394430e-04).epsilon(1e-6));
  CHECK(t.pair(0, 2).p == Approx(9.1749943868208905e-01).epsilon(1e-6));
  CHECK(t.pair(1, 2).p == Approx(2.2101083450110082e-04).epsilon(1e-6));
  CHECK(t.pair(0, 1).significant);
  CHECK_FALSE(t.pair(0, 2).significant);
  CHECK(t.pair(2, 1).mean_difference == Approx(5.0333333333333333 - 7.12));
  CHECK_THROWS_AS(tukey_hsd(kGroups, 1.5), std::invalid_argument);
}

TEST_CASE("Bonferroni") {
  CHECK(std::fabs(bonferroni(0.05, 3) - 0.0167) < 5e-5);
  CHECK(bonferroni(0.05, 5) == Approx(0.01));
  CHECK(bonferroni(0.05, 1) == 0.05);
  CHECK_THROWS_AS(bonferroni(0.05, 0), std::invalid_argument);
}

TEST_CASE("sample matrix checks") {
  SampleMatrix m{{"a", "b"}, {{1, 2}, {3, 4}}};
  CHECK_NOTHROW(m.check());
  m.labels = {"a", "a"};
  CHECK_THROWS_AS(m.check(), std::invalid_argument);
  m.labels = {"a"};
  CHECK_THROWS_AS(m.check(), std::invalid_argument);
}
