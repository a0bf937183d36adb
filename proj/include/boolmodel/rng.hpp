#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace boolmodel {

/// Per-replicate random stream.
///
/// The engine is mt19937_64 seeded through seed_seq from the master seed
/// and the replicate index, so every (seed, replicate) pair owns its own
/// stream and replicates can be generated in any order. Draws within a
/// replicate are consumed sequentially.
class Rng {
public:
  Rng(std::uint64_t seed, std::uint64_t replicate) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(replicate), static_cast<std::uint32_t>(replicate >> 32),
                      0x9e3779b9u};
    engine_.seed(seq);
  }

  std::uint64_t bits() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Poisson variate. Inversion by sequential search below mean 30,
  /// Hormann's transformed rejection with squeeze (PTRS) above.
  std::uint64_t poisson(double mean) {
    if (!(mean > 0.0)) return 0;
    if (mean < kPoissonSwitch) return poisson_inversion(mean);
    return poisson_ptrs(mean);
  }

  static constexpr double kPoissonSwitch = 30.0;

private:
  std::uint64_t poisson_inversion(double mean) {
    const double u = uniform();
    double p = std::exp(-mean);
    double s = p;
    std::uint64_t k = 0;
    while (u > s && k < 1000) {
      ++k;
      p *= mean / static_cast<double>(k);
      s += p;
    }
    return k;
  }

  std::uint64_t poisson_ptrs(double mean) {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
      const double u = uniform() - 0.5;
      const double v = uniform();
      const double us = 0.5 - std::abs(u);
      const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
      if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
      if (k < 0.0 || (us < 0.013 && v > us)) continue;
      if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
          -mean + k * loglam - std::lgamma(k + 1.0))
        return static_cast<std::uint64_t>(k);
    }
  }

  std::mt19937_64 engine_;
};

}  // namespace boolmodel
