#pragma once

// Seeded sampling. The algorithms here are part of the external contract:
// given the same seed, every build on every platform draws the same points
// (up to libm rounding in the last bits of log/cos/sin/pow).
//
//   stream state   splitmix64, seeded with seed XOR FNV1a64(label)
//   uniform (0,1)  ((x >> 11) + 0.5) * 2^-53
//   normals        Box-Muller on consecutive uniforms
//   ball           normal direction * radius * U^(1/2n), complex dim n
//   fiber vector   normalized 2n-normal * (0.5 + 1.5 U)

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

#include "core/types.hpp"

namespace lfv {

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // strictly inside (0,1); never returns an endpoint
  double unit() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::string_view label)
      : rng_(seed ^ fnv1a64(label)) {}

  double unit() { return rng_.unit(); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * rng_.unit(); }
  std::uint64_t bits() { return rng_.next(); }

  std::pair<double, double> normal_pair() {
    const double u1 = rng_.unit(), u2 = rng_.unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(t), r * std::sin(t)};
  }

  // uniform in the Euclidean ball of ℂ^n ≅ ℝ^{2n}
  CVector complex_ball(int n, const CVector& center, double radius) {
    CVector g = gaussian(n);
    const double norm = std::sqrt(sq_norm(g));
    const double scale = radius * std::pow(rng_.unit(), 1.0 / (2.0 * n)) / norm;
    return center + scale * g;
  }

  // uniform on the Hermitian-identity unit sphere
  CVector fiber_direction(int n) {
    CVector g = gaussian(n);
    return g / std::sqrt(sq_norm(g));
  }

  // sphere direction scaled by uniform [0.5, 2]
  CVector fiber_sample(int n) { return fiber_direction(n) * uniform(0.5, 2.0); }

 private:
  CVector gaussian(int n) {
    CVector g(n);
    for (int i = 0; i < n; ++i) {
      auto [a, b] = normal_pair();
      g[i] = Complex(a, b);
    }
    return g;
  }

  static double sq_norm(const CVector& v) {
    double s = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) s += std::norm(v[i]);
    return s;
  }

  SplitMix64 rng_;
};

}  // namespace lfv
