#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "tcross/stats.hpp"

using namespace tcross;

TEST_CASE("summary moments match hand computed values on a small set") {
  SampleSummary s = summarize({1.0, 2.0, 3.0, 4.0});
  REQUIRE(s.n == 4);
  REQUIRE(s.mean == Catch::Approx(2.5).margin(1e-15));
  REQUIRE(s.variance() == Catch::Approx(5.0 / 3.0).margin(1e-15));
  REQUIRE(s.min == 1.0);
  REQUIRE(s.max == 4.0);
  // Central moments about 2.5: m3 = 0 by symmetry, m4 = 10.25.
  REQUIRE(std::abs(s.skewness()) < 1e-14);
  REQUIRE(s.excess_kurtosis() == Catch::Approx(4.0 * 10.25 / 25.0 - 3.0).margin(1e-13));
}

TEST_CASE("single pass moments agree with a two pass long double sweep") {
  Rng rng(505u);
  std::vector<double> xs;
  for (int i = 0; i < 20000; ++i) xs.push_back(std::exp(rng.normal()) + rng.uniform(-2.0, 2.0));
  const SampleSummary s = summarize(xs);

  long double mean = 0.0L;
  for (double x : xs) mean += x;
  mean /= xs.size();
  long double c2 = 0.0L, c3 = 0.0L, c4 = 0.0L;
  for (double x : xs) {
    const long double d = x - mean;
    c2 += d * d;
    c3 += d * d * d;
    c4 += d * d * d * d;
  }
  const double var = static_cast<double>(c2 / (xs.size() - 1));
  const double g1 = static_cast<double>(std::sqrt((long double)xs.size()) * c3 / powl(c2, 1.5L));
  const double g2 = static_cast<double>((long double)xs.size() * c4 / (c2 * c2) - 3.0L);

  REQUIRE(s.mean == Catch::Approx(static_cast<double>(mean)).epsilon(1e-12));
  REQUIRE(s.variance() == Catch::Approx(var).epsilon(1e-10));
  REQUIRE(s.skewness() == Catch::Approx(g1).epsilon(1e-8));
  REQUIRE(s.excess_kurtosis() == Catch::Approx(g2).epsilon(1e-8));
}

TEST_CASE("normal cdf inverts the quantile oracle") {
  REQUIRE(normal_cdf(0.0) == Catch::Approx(0.5).margin(1e-16));
  for (double p : {0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.975, 0.999})
    REQUIRE(normal_cdf(oracle::normal_quantile(p)) == Catch::Approx(p).margin(1e-12));
  for (double x : {0.3, 1.1, 2.7})
    REQUIRE(normal_cdf(-x) + normal_cdf(x) == Catch::Approx(1.0).margin(1e-15));
  REQUIRE(normal_cdf(3.0, 1.0, 2.0) == Catch::Approx(normal_cdf(1.0)).margin(1e-15));
  REQUIRE_THROWS_AS(normal_cdf(0.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("ks statistic on a tiny sample equals the hand value") {
  const auto ident = [](double x) { return x; };
  REQUIRE(ks_statistic({0.1, 0.2, 0.8, 0.9}, ident) == Catch::Approx(0.3).margin(1e-15));
  REQUIRE(ks_statistic({0.5}, ident) == Catch::Approx(0.5).margin(1e-15));
}

TEST_CASE("kolmogorov tail and critical value match pinned constants") {
  REQUIRE(kolmogorov_tail(1.6276236115189503465) == Catch::Approx(0.01).margin(1e-12));
  REQUIRE(ks_critical(1000, 0.01) ==
          Catch::Approx(0.051469977858689535239).margin(1e-12));
  REQUIRE(kolmogorov_tail(0.0) == 1.0);
  REQUIRE(kolmogorov_tail(10.0) < 1e-30);
}

TEST_CASE("ks test accepts a matching normal sample and rejects mismatches") {
  Rng rng(6161u);
  std::vector<double> xs;
  for (int i = 0; i < 1000; ++i) xs.push_back(rng.normal());
  const double crit = ks_critical(xs.size(), 0.01);

  REQUIRE(ks_test_normal(xs, 0.0, 1.0).d < crit);
  REQUIRE(ks_test_normal(xs, 0.0, 1.0).p > 0.01);

  std::vector<double> shifted = xs;
  for (double& x : shifted) x += 0.3;
  REQUIRE(ks_test_normal(shifted, 0.0, 1.0).d > crit);

  std::vector<double> scaled = xs;
  for (double& x : scaled) x *= 1.5;
  REQUIRE(ks_test_normal(scaled, 0.0, 1.0).d > crit);
}

TEST_CASE("jarque bera separates normal and exponential samples") {
  Rng rng(7272u);
  SampleSummary normal, expo;
  for (int i = 0; i < 4000; ++i) {
    normal.add(rng.normal());
    expo.add(-std::log(1.0 - rng.next_unit()));
  }
  REQUIRE(jarque_bera(normal).p > 1e-3);
  REQUIRE(jarque_bera(expo).p < 1e-12);
}

TEST_CASE("rate fit recovers an exact power law") {
  std::vector<std::pair<double, double>> pts;
  for (double a : {100.0, 225.0, 400.0, 900.0, 2500.0})
    pts.push_back({a, 0.37 * std::pow(a, 1.5)});
  const RateFit f = fit_variance_rate(pts);
  REQUIRE(f.slope == Catch::Approx(1.5).margin(1e-12));
  REQUIRE(f.intercept == Catch::Approx(std::log(0.37)).margin(1e-11));
  REQUIRE(f.slope_se < 1e-10);
  REQUIRE(f.regime == RateRegime::long_range);

  for (auto& [a, v] : pts) v = 2.0 * a;
  const RateFit g = fit_variance_rate(pts);
  REQUIRE(g.slope == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(g.regime == RateRegime::short_range);

  REQUIRE(rate_regime_name(f.regime) == std::string("LONG_RANGE"));
  REQUIRE(rate_regime_name(g.regime) == std::string("SHORT_RANGE"));
}

TEST_CASE("rate fit standard error matches a hand computed example") {
  // Areas e^0, e^1, e^2 with variances e^1, e^2.3, e^3: slope 1, residuals
  // (-0.1, 0.2, -0.1), so se = sqrt(0.06 / 1 / 2).
  const std::vector<std::pair<double, double>> pts = {
      {1.0, std::exp(1.0)}, {std::exp(1.0), std::exp(2.3)}, {std::exp(2.0), std::exp(3.0)}};
  const RateFit f = fit_variance_rate(pts);
  REQUIRE(f.slope == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(f.intercept == Catch::Approx(1.1).margin(1e-12));
  REQUIRE(f.slope_se == Catch::Approx(std::sqrt(0.03)).margin(1e-12));
}

TEST_CASE("rate fit rejects degenerate input") {
  REQUIRE_THROWS_AS(fit_variance_rate({{100.0, 5.0}}), std::invalid_argument);
  REQUIRE_THROWS_AS(fit_variance_rate({{100.0, 5.0}, {100.0, 6.0}}), std::invalid_argument);
  REQUIRE_THROWS_AS(fit_variance_rate({{100.0, 5.0}, {200.0, -1.0}}), std::invalid_argument);
}

TEST_CASE("interpolated quantile on a small ladder") {
  const std::vector<double> xs = {4.0, 1.0, 3.0, 2.0};
  REQUIRE(interpolated_quantile(xs, 0.0) == 1.0);
  REQUIRE(interpolated_quantile(xs, 1.0) == 4.0);
  REQUIRE(interpolated_quantile(xs, 0.5) == Catch::Approx(2.5).margin(1e-15));
  REQUIRE(interpolated_quantile(xs, 1.0 / 3.0) == Catch::Approx(2.0).margin(1e-12));
}

TEST_CASE("bootstrap variance is deterministic and brackets the estimate") {
  Rng data_rng(88u);
  std::vector<double> xs;
  for (int i = 0; i < 400; ++i) xs.push_back(3.0 * data_rng.normal() + 1.0);

  Rng r1(999u), r2(999u), r3(1000u);
  const BootstrapResult a = bootstrap_variance(xs, 1000, r1);
  const BootstrapResult b = bootstrap_variance(xs, 1000, r2);
  const BootstrapResult c = bootstrap_variance(xs, 1000, r3);
  REQUIRE(a.estimate == sample_variance(xs));
  REQUIRE(a.se == b.se);
  REQUIRE(a.lo == b.lo);
  REQUIRE(a.hi == b.hi);
  REQUIRE(a.se != c.se);
  REQUIRE(a.lo < a.estimate);
  REQUIRE(a.estimate < a.hi);
  REQUIRE(a.lo < 9.0);  // true variance
  REQUIRE(9.0 < a.hi);

  const std::vector<double> flat(50, 2.5);
  const BootstrapResult f = bootstrap_variance(flat, 100, r1);
  REQUIRE(f.estimate == 0.0);
  REQUIRE(f.se == 0.0);
  REQUIRE(f.lo == 0.0);
  REQUIRE(f.hi == 0.0);
}
