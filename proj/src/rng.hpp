#pragma once

// Seed-deterministic random numbers.  mt19937_64 is fully specified by the
// standard; the gaussian transform is hand-rolled because the distribution
// classes in <random> are implementation-defined and would break
// byte-identical reports across toolchains.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace ssr {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in (0, 1).
  double uniform() {
    while (true) {
      const double u = (engine_() >> 11) * 0x1.0p-53;
      if (u > 0.0) return u;
    }
  }

  double gaussian() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
  }

  // Standard complex normal: variance 1/2 per quadrature.
  std::complex<double> complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re / std::sqrt(2.0), im / std::sqrt(2.0)};
  }

  std::uint64_t raw() { return engine_(); }

private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace ssr
