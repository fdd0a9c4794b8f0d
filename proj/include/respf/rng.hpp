#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "respf/types.hpp"

namespace respf {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Replicate i of an ensemble draws from seed ^ i (scrambled below), so the
/// stream is fully determined by (seed, replicate index) and independent of
/// scheduling.
inline std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t replicate) {
  return seed ^ replicate;
}

/// Deterministic standard-normal source: mt19937_64 + explicit Box-Muller.
/// Hand-rolled so the byte stream does not depend on the standard library's
/// normal_distribution implementation.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  double gauss() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform_open();
    double u2 = uniform_open();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  Vector gauss_vector(Index n) {
    Vector g(n);
    for (Index i = 0; i < n; ++i) g[i] = gauss();
    return g;
  }

  /// Uniform in (0,1), never exactly 0.
  double uniform_open() {
    const std::uint64_t u = engine_();
    return (static_cast<double>(u >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace respf
