#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace tcross {

enum class ModelKind { plt, pvt };

struct TessellationSpec {
  ModelKind kind = ModelKind::plt;
  double intensity = 1.0;  // line length intensity (plt) or nucleus intensity (pvt)
};

inline const char* kind_name(ModelKind k) { return k == ModelKind::plt ? "plt" : "pvt"; }

// Lanczos approximation, g = 7, 9 coefficients; |relative error| < 1e-13 over
// the argument range used here. Reflection handles x < 0.5.
inline double lanczos_gamma(double x) {
  static const double g = 7.0;
  static const double coef[9] = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) return M_PI / (std::sin(M_PI * x) * lanczos_gamma(1.0 - x));
  x -= 1.0;
  double a = coef[0];
  const double t = x + g + 0.5;
  for (int i = 1; i < 9; ++i) a += coef[i] / (x + i);
  return std::sqrt(2.0 * M_PI) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

namespace detail {
inline double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}
inline double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}
}  // namespace detail

// Volume of the d-dimensional unit ball.
inline double unit_ball_volume(int d) {
  if (d < 0) throw std::invalid_argument("unit_ball_volume: negative dimension");
  return std::pow(M_PI, 0.5 * d) / lanczos_gamma(0.5 * d + 1.0);
}

// Mean fraction of k-flat content seen in a (d-1)-dimensional isotropic
// section, relating boundary intensity to section intensity.
inline double stereo_coeff(int d, int k) {
  if (!(1 <= k && k < d)) throw std::invalid_argument("stereo_coeff: need 1 <= k < d");
  return lanczos_gamma(0.5 * (k + 1)) * lanczos_gamma(0.5 * d) /
         (lanczos_gamma(0.5 * k) * lanczos_gamma(0.5 * (d + 1)));
}

// Intensity of the k-flat intersection process of an isotropic Poisson
// hyperplane tessellation with intensity lam.
inline double pht_intensity(double lam, int d, int k) {
  if (!(lam >= 0.0)) throw std::invalid_argument("pht_intensity: negative intensity");
  if (!(0 <= k && k <= d) || d < 1) throw std::invalid_argument("pht_intensity: bad (d,k)");
  const double kd = unit_ball_volume(d), kk = unit_ball_volume(k), kd1 = unit_ball_volume(d - 1);
  return detail::binom(d, k) * (kd / kk) * std::pow(kd1 / (d * kd), d - k) * std::pow(lam, d - k);
}

// Asymptotic variance density of the k-flat content of an isotropic Poisson
// hyperplane tessellation in balls, normalized by |B|^(2-1/d).
inline double pht_sigma2(double lam, int d, int k) {
  if (!(lam >= 0.0)) throw std::invalid_argument("pht_sigma2: negative intensity");
  if (!(0 <= k && k < d) || d < 1) throw std::invalid_argument("pht_sigma2: bad (d,k)");
  const double kd = unit_ball_volume(d), kk = unit_ball_volume(k), kd1 = unit_ball_volume(d - 1);
  const double c = detail::binom(d - 1, k) * detail::factorial(d) * kd1 / (detail::factorial(k) * kk);
  return std::pow(lam, 2 * d - 2 * k - 1) *
         (std::pow(2.0, 2 * d - 1) * std::pow(kd, 1.0 / d) / detail::factorial(2 * d - 1)) * c * c *
         std::pow(kd1 / (d * kd), 2.0 * (d - k));
}

// Same quantity for k = d-1 in product form; used as an independent
// cross-check of pht_sigma2.
inline double pht_sigma2_facet(double lam, int d) {
  if (d < 1) throw std::invalid_argument("pht_sigma2_facet: bad d");
  const double kd = unit_ball_volume(d), kd1 = unit_ball_volume(d - 1);
  return lam * std::pow(2.0, 2 * d - 1) * kd1 * kd1 /
         (detail::factorial(2 * d - 1) * std::pow(kd, 2.0 - 1.0 / d));
}

// Mean k-facet content per unit volume of the unit-intensity Poisson-Voronoi
// tessellation (Miles' moment formula).
inline double miles_intensity(int d, int k) {
  if (!(1 <= k && k <= d - 1)) throw std::invalid_argument("miles_intensity: need 1 <= k <= d-1");
  const double kd = unit_ball_volume(d), kd1 = unit_ball_volume(d - 1);
  const double top = std::pow(2.0 * M_PI, d - k + 1) * lanczos_gamma(d - k + double(k) / d) *
                     unit_ball_volume(d * (d - k) + k - 2) * unit_ball_volume(k - 1);
  const double bot = detail::factorial(d - k + 1) * d * unit_ball_volume(d * (d - k) + k - 1) *
                     std::pow(kd, double(k) / d);
  return top / bot * std::pow(kd1 / kd, d - k);
}

// Boundary ((d-1)-facet) content intensity of a component tessellation.
inline double component_surface_intensity(const TessellationSpec& t, int d) {
  if (!(t.intensity > 0.0))
    throw std::invalid_argument("component_surface_intensity: intensity must be positive");
  switch (t.kind) {
    case ModelKind::plt:
      if (d != 2) throw std::invalid_argument("component_surface_intensity: plt is planar only");
      return t.intensity;
    case ModelKind::pvt:
      return miles_intensity(d, d - 1) * std::pow(t.intensity, 1.0 / d);
  }
  throw std::invalid_argument("component_surface_intensity: unknown kind");
}

// Intensity of the k-flat section process of a component tessellation.
inline double component_section_intensity(const TessellationSpec& t, int d, int k) {
  return stereo_coeff(d, k) * component_surface_intensity(t, d);
}

struct MomentReport {
  double mean_density = 0.0;        // E Z / |W|
  double asym_variance = 0.0;       // variance constant under the stated normalization
  double norm_exponent = 0.0;       // Var Z ~ asym_variance * |W|^(2*norm_exponent)
  double facet_intensity = 0.0;     // k-facet content intensity of the initial tessellation
  double section_intensity = 0.0;   // component k-flat section intensity
  double multiplicity = 0.0;        // facets of the initial tessellation per k-flat piece
};

// Moments when the initial tessellation is an isotropic Poisson hyperplane
// tessellation: long-range case, fluctuations of order |W|^(1-1/(2d)).
inline MomentReport pht_nesting_moments(double lam, const TessellationSpec& component, int d,
                                        int k) {
  if (!(lam > 0.0)) throw std::invalid_argument("pht_nesting_moments: intensity must be positive");
  if (!(0 <= k && k < d)) throw std::invalid_argument("pht_nesting_moments: bad (d,k)");
  MomentReport r;
  r.multiplicity = std::pow(2.0, d - k);
  r.section_intensity = component_section_intensity(component, d, k);
  r.facet_intensity = pht_intensity(lam, d, k);
  r.mean_density = r.multiplicity * r.section_intensity * r.facet_intensity;
  const double s = r.multiplicity * r.section_intensity;
  r.asym_variance = s * s * pht_sigma2(lam, d, k);
  r.norm_exponent = 1.0 - 1.0 / (2.0 * d);
  return r;
}

// Edge-length variance constant of the unit-intensity planar Poisson-Voronoi
// tessellation (Brakke's integral), and the mean conditional variance of
// crossings of a unit-intensity planar Poisson-Voronoi net over the boundary
// of the typical cell of an independent one.
constexpr double brakke_constant() { return 1.0445685; }
constexpr double pvt_inner_variance_constant() { return 2.7023; }

// Moments when the initial tessellation is a planar Poisson-Voronoi
// tessellation: short-range case, fluctuations of order |W|^(1/2).
inline MomentReport weak_nesting_moments(double gamma, const TessellationSpec& component,
                                         int d = 2, int k = 1,
                                         double brakke = brakke_constant(),
                                         double inner = pvt_inner_variance_constant()) {
  if (d != 2 || k != 1)
    throw std::invalid_argument("weak_nesting_moments: supported for d = 2, k = 1 only");
  if (!(gamma > 0.0))
    throw std::invalid_argument("weak_nesting_moments: intensity must be positive");
  MomentReport r;
  r.multiplicity = 2.0;
  r.section_intensity = component_section_intensity(component, 2, 1);
  r.facet_intensity = 2.0 * std::sqrt(gamma);  // edge length intensity of the initial net
  r.mean_density = r.multiplicity * r.section_intensity * r.facet_intensity;
  const double lam = component.intensity;
  double tau0_sq = 0.0;  // mean over initial cells of the conditional crossing variance
  switch (component.kind) {
    case ModelKind::plt:
      // crossings of a convex boundary are twice a Poisson count with mean
      // lam * perimeter / pi; mean cell perimeter is 4 / sqrt(gamma)
      tau0_sq = (4.0 * lam / M_PI) * 4.0 * std::sqrt(gamma);
      break;
    case ModelKind::pvt:
      tau0_sq = inner * std::sqrt(gamma * lam);
      break;
  }
  const double s = r.multiplicity * r.section_intensity;
  r.asym_variance = tau0_sq + s * s * brakke;
  r.norm_exponent = 0.5;
  return r;
}

}  // namespace tcross
