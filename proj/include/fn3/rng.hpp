#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "fn3/mat3.hpp"

namespace fn3 {

// mt19937_64 with hand-rolled uniform/normal transforms so that a fixed seed
// yields the same stream on every platform the engine is deterministic on.
struct Rng {
  std::mt19937_64 eng;

  explicit Rng(std::uint64_t seed) : eng(seed) {}

  // uniform in [0, 1) with 53 random bits
  double uniform() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Box-Muller; one fresh pair per call keeps the stream call-order stable
  double gauss() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586476925286766559 * u2);
  }

  cx cgauss() { return cx(gauss(), gauss()) * 0.7071067811865475244; }
};

// Gaussian entries scaled to det 1 via the principal cube root.
inline Mat3 random_unimodular(Rng& rng, double spread = 1.0) {
  for (;;) {
    Mat3 m;
    for (auto& z : m.e) z = spread * rng.cgauss();
    const cx d = det(m);
    if (std::abs(d) < 1e-6) continue;
    const cx s = std::pow(d, cx(1.0 / 3.0));
    for (auto& z : m.e) z /= s;
    return m;
  }
}

inline Mat3 random_well_conditioned(Rng& rng, double cond_cap = 1e3) {
  for (;;) {
    const Mat3 m = random_unimodular(rng);
    if (condition_estimate(m) <= cond_cap) return m;
  }
}

}  // namespace fn3
