#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace ratiofit {

/// Seeded generator with platform-independent variates.
///
/// std::mt19937_64 is fully specified by the standard, but the standard
/// distributions are not, so uniforms, normals and gammas are derived here
/// from the raw 64-bit stream. Identical seeds give identical sequences on
/// every conforming toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1).
  double uniform_open() {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    return u;
  }

  /// Uniform integer in [0, bound) without modulo bias.
  std::uint64_t below(std::uint64_t bound);

  /// Standard normal (Marsaglia polar method).
  double normal();

  /// Standard gamma with the given shape (Marsaglia-Tsang; shape < 1 via the
  /// U^{1/k} boost).
  double standard_gamma(double shape);

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// Seeded Fisher-Yates permutation of 0..n-1.
std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed);

}  // namespace ratiofit
