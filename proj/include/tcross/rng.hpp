#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace tcross {

// 64-bit finalizer with full avalanche (splitmix64 mixing function).
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

// Splittable seed derivation. Every random decision in the library hangs off
// one master seed through a path of child() calls, so results are independent
// of evaluation order and thread scheduling. No wall-clock entropy anywhere.
class SeedStream {
 public:
  explicit SeedStream(std::uint64_t master) : s_(mix64(master ^ 0x6a09e667f3bcc909ull)) {}

  SeedStream child(std::uint64_t index) const {
    return SeedStream(raw{}, mix64(s_ ^ (0x9e3779b97f4a7c15ull * (index + 1))));
  }

  std::uint64_t seed() const { return s_; }

 private:
  struct raw {};
  SeedStream(raw, std::uint64_t s) : s_(s) {}
  std::uint64_t s_;
};

// splitmix64 sequence generator plus the hand-rolled samplers the library
// needs. Standard-library distributions are implementation-defined, which
// would break cross-run byte reproducibility, so everything is explicit.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  explicit Rng(const SeedStream& s) : state_(s.seed()) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix64(state_);
  }

  // Uniform in [0,1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * next_unit(); }

  // Standard normal via Marsaglia polar; spare value cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_unit() - 1.0;
      v = 2.0 * next_unit() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  // Poisson count. Product-of-uniforms below 10, transformed rejection above.
  long long poisson(double mean) {
    if (!(mean >= 0.0)) throw std::invalid_argument("poisson: mean must be nonnegative");
    if (mean == 0.0) return 0;
    if (mean < 10.0) return poisson_product(mean);
    return poisson_ptrs(mean);
  }

 private:
  long long poisson_product(double mean) {
    const double limit = std::exp(-mean);
    long long k = 0;
    double prod = 1.0;
    do {
      ++k;
      prod *= next_unit();
    } while (prod > limit);
    return k - 1;
  }

  // Hormann's transformed rejection with squeeze; valid for mean >= 10.
  long long poisson_ptrs(double mean) {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
      const double u = next_unit() - 0.5;
      const double v = next_unit();
      const double us = 0.5 - std::fabs(u);
      const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
      if (us >= 0.07 && v <= vr) return static_cast<long long>(k);
      if (k < 0.0 || (us < 0.013 && v > us)) continue;
      if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
          -mean + k * loglam - std::lgamma(k + 1.0))
        return static_cast<long long>(k);
    }
  }

  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace tcross
