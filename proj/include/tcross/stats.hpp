#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "tcross/rng.hpp"

namespace tcross {

// Running sample moments, single pass. The central moment accumulators are
// updated with the usual pairwise-stable recurrences, so the summary can be
// fed millions of values without a second sweep over the data.
struct SampleSummary {
  long n = 0;
  double mean = 0.0;
  double m2 = 0.0;  // sum of (x - mean)^2
  double m3 = 0.0;
  double m4 = 0.0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();

  void add(double x) {
    const double n0 = static_cast<double>(n);
    const double n1 = n0 + 1.0;
    const double delta = x - mean;
    const double dn = delta / n1;
    const double dn2 = dn * dn;
    const double term1 = delta * dn * n0;
    mean += dn;
    m4 += term1 * dn2 * (n1 * n1 - 3.0 * n1 + 3.0) + 6.0 * dn2 * m2 - 4.0 * dn * m3;
    m3 += term1 * dn * (n1 - 2.0) - 3.0 * dn * m2;
    m2 += term1;
    ++n;
    min = std::min(min, x);
    max = std::max(max, x);
  }

  double variance() const {  // unbiased
    if (n < 2) throw std::invalid_argument("summary: variance needs two values");
    return m2 / (static_cast<double>(n) - 1.0);
  }
  double sd() const { return std::sqrt(variance()); }
  double se() const { return sd() / std::sqrt(static_cast<double>(n)); }

  double skewness() const {  // g1, the moment estimator
    if (!(m2 > 0.0)) return 0.0;
    return std::sqrt(static_cast<double>(n)) * m3 / std::pow(m2, 1.5);
  }
  double excess_kurtosis() const {  // g2
    if (!(m2 > 0.0)) return 0.0;
    return static_cast<double>(n) * m4 / (m2 * m2) - 3.0;
  }
};

inline SampleSummary summarize(const std::vector<double>& xs) {
  SampleSummary s;
  for (double x : xs) s.add(x);
  return s;
}

inline double normal_cdf(double x, double mu = 0.0, double sigma = 1.0) {
  if (!(sigma > 0.0)) throw std::invalid_argument("normal_cdf: sigma must be positive");
  return 0.5 * std::erfc(-(x - mu) / (sigma * std::sqrt(2.0)));
}

// Supremum distance between the empirical cdf of the sample and a fully
// specified continuous cdf.
inline double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf) {
  if (xs.empty()) throw std::invalid_argument("ks: empty sample");
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
    d = std::max(d, f - static_cast<double>(i) / n);
  }
  return d;
}

// P(sup_t |B(t)| > t) for the Brownian bridge, the limit law of sqrt(n) D.
inline double kolmogorov_tail(double t) {
  if (!(t > 0.0)) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * t * t);
    sum += (j % 2 == 1) ? term : -term;
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

struct KsResult {
  double d = 0.0;
  double p = 1.0;
};

inline KsResult ks_test(const std::vector<double>& xs,
                        const std::function<double(double)>& cdf) {
  KsResult r;
  r.d = ks_statistic(xs, cdf);
  r.p = kolmogorov_tail(std::sqrt(static_cast<double>(xs.size())) * r.d);
  return r;
}

inline KsResult ks_test_normal(const std::vector<double>& xs, double mu, double sigma) {
  return ks_test(xs, [=](double x) { return normal_cdf(x, mu, sigma); });
}

// Largest D accepted at level alpha for a sample of size n, from the same
// asymptotic tail used by ks_test.
inline double ks_critical(std::size_t n, double alpha) {
  if (n == 0 || !(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument("ks_critical: bad arguments");
  double lo = 1e-8, hi = 5.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (kolmogorov_tail(mid) > alpha)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi) / std::sqrt(static_cast<double>(n));
}

struct JbResult {
  double jb = 0.0;
  double p = 1.0;
};

// Jarque and Bera's moment test. Under normality JB is asymptotically
// chi squared with two degrees of freedom, whose tail is exp(-jb / 2).
inline JbResult jarque_bera(const SampleSummary& s) {
  if (s.n < 8) throw std::invalid_argument("jarque_bera: sample too small");
  const double g1 = s.skewness();
  const double g2 = s.excess_kurtosis();
  JbResult r;
  r.jb = static_cast<double>(s.n) * (g1 * g1 / 6.0 + g2 * g2 / 24.0);
  r.p = std::exp(-0.5 * r.jb);
  return r;
}

enum class RateRegime { short_range, long_range };

inline const char* rate_regime_name(RateRegime r) {
  return r == RateRegime::long_range ? "LONG_RANGE" : "SHORT_RANGE";
}

// Growth of the variance in the window area splits the models into two
// classes: area order (slope near 1) and area to the power 2 - 1/d (slope
// near 1.5 in the plane). The midpoint-ish cut at 1.25 separates them.
constexpr double long_range_slope_cut() { return 1.25; }

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  std::size_t points = 0;
  RateRegime regime = RateRegime::short_range;
};

// Least squares fit of log(variance) against log(area).
inline RateFit fit_variance_rate(const std::vector<std::pair<double, double>>& area_var) {
  const std::size_t n = area_var.size();
  if (n < 2) throw std::invalid_argument("rate fit: need at least two rungs");
  double sx = 0.0, sy = 0.0;
  for (const auto& [a, v] : area_var) {
    if (!(a > 0.0) || !(v > 0.0))
      throw std::invalid_argument("rate fit: areas and variances must be positive");
    sx += std::log(a);
    sy += std::log(v);
  }
  const double mx = sx / static_cast<double>(n), my = sy / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [a, v] : area_var) {
    const double dx = std::log(a) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(v) - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("rate fit: areas must differ");
  RateFit f;
  f.points = n;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0.0;
  for (const auto& [a, v] : area_var) {
    const double r = std::log(v) - (f.intercept + f.slope * std::log(a));
    sse += r * r;
  }
  f.slope_se = n > 2 ? std::sqrt(sse / (static_cast<double>(n) - 2.0) / sxx) : 0.0;
  f.regime =
      f.slope > long_range_slope_cut() ? RateRegime::long_range : RateRegime::short_range;
  return f;
}

struct BootstrapResult {
  double estimate = 0.0;
  double se = 0.0;
  double lo = 0.0;  // 2.5 percent
  double hi = 0.0;  // 97.5 percent
};

inline double sample_variance(const std::vector<double>& xs) {
  if (xs.size() < 2) throw std::invalid_argument("variance: need two values");
  double m = 0.0;
  for (double x : xs) m += x;
  m /= static_cast<double>(xs.size());
  double s2 = 0.0;
  for (double x : xs) s2 += (x - m) * (x - m);
  return s2 / (static_cast<double>(xs.size()) - 1.0);
}

inline double interpolated_quantile(std::vector<double> xs, double q) {
  if (xs.empty()) throw std::invalid_argument("quantile: empty sample");
  std::sort(xs.begin(), xs.end());
  const double pos = q * (static_cast<double>(xs.size()) - 1.0);
  const std::size_t i = static_cast<std::size_t>(std::clamp(
      std::floor(pos), 0.0, static_cast<double>(xs.size()) - 1.0));
  if (i + 1 >= xs.size()) return xs.back();
  const double frac = pos - static_cast<double>(i);
  return xs[i] * (1.0 - frac) + xs[i + 1] * frac;
}

// Percentile bootstrap of an arbitrary statistic. Resampling is driven by
// the caller's generator, so the whole procedure replays from a seed.
template <typename Stat>
inline BootstrapResult bootstrap_statistic(const std::vector<double>& xs, Stat&& stat,
                                           int resamples, Rng& rng) {
  if (xs.empty()) throw std::invalid_argument("bootstrap: empty sample");
  if (resamples < 2) throw std::invalid_argument("bootstrap: need several resamples");
  BootstrapResult r;
  r.estimate = stat(xs);
  std::vector<double> draw(xs.size());
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(resamples));
  for (int b = 0; b < resamples; ++b) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      auto j = static_cast<std::size_t>(rng.next_unit() * static_cast<double>(xs.size()));
      if (j >= xs.size()) j = xs.size() - 1;
      draw[i] = xs[j];
    }
    values.push_back(stat(draw));
  }
  double m = 0.0;
  for (double v : values) m += v;
  m /= static_cast<double>(values.size());
  double s2 = 0.0;
  for (double v : values) s2 += (v - m) * (v - m);
  r.se = std::sqrt(s2 / (static_cast<double>(values.size()) - 1.0));
  r.lo = interpolated_quantile(values, 0.025);
  r.hi = interpolated_quantile(values, 0.975);
  return r;
}

inline BootstrapResult bootstrap_variance(const std::vector<double>& xs, int resamples,
                                          Rng& rng) {
  return bootstrap_statistic(
      xs, [](const std::vector<double>& v) { return sample_variance(v); }, resamples, rng);
}

}  // namespace tcross
