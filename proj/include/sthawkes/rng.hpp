#ifndef STHAWKES_RNG_HPP
#define STHAWKES_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace hawkes {

// Stateless 64-bit mixer (splitmix64 finalizer).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Derives an independent stream seed for chain (or replicate) `stream`.
inline std::uint64_t deriveSeed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed + 0x632BE59BD9B4E019ull * (stream + 1));
}

// Seedable generator with explicit variate converters. The converters are
// written out here (rather than using std::*_distribution) so that a seed
// pins the byte-exact draw sequence independent of the standard library
// version; the engine itself (mt19937_64) is bit-specified by the standard.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t nextU64() { return gen_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(nextU64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform on {0, ..., n-1} by rejection-free scaling (n tiny here).
  int uniformInt(int n) {
    int k = static_cast<int>(uniform() * n);
    return k >= n ? n - 1 : k;
  }

  // Standard normal via Box-Muller; consumes exactly two 64-bit words.
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  // Strictly positive exponential variate.
  double exponential(double rate) {
    for (;;) {
      const double e = -std::log1p(-uniform());
      if (e > 0.0) return e / rate;
    }
  }

  // Poisson count; inversion for small means, PTRS transformed rejection
  // (Hormann 1993) for large ones. Exact in distribution either way.
  long poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean < 30.0) {
      const double limit = std::exp(-mean);
      long k = 0;
      double prod = uniform();
      while (prod > limit) {
        ++k;
        prod *= uniform();
      }
      return k;
    }
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double invAlpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
      double u = uniform() - 0.5;
      double v = uniform();
      if (v == 0.0) continue;
      double us = 0.5 - std::fabs(u);
      double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
      if (us >= 0.07 && v <= vr) return static_cast<long>(k);
      if (k < 0.0 || (us < 0.013 && v > us)) continue;
      if (std::log(v * invAlpha / (a / (us * us) + b)) <=
          k * std::log(mean) - mean - std::lgamma(k + 1.0)) {
        return static_cast<long>(k);
      }
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace hawkes

#endif  // STHAWKES_RNG_HPP
