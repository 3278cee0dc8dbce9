#pragma once

// Seeded random source that does not depend on the standard library vendor:
// std::mt19937_64 has a fully specified output sequence, and the uniform and
// Gaussian transforms below are written out instead of using the
// implementation-defined std:: distributions. Gaussians still go through libm
// log/sin/cos.
//
// Stream split: trial i under master seed s draws from Rng(derive_seed(s, i)).

#include <cstdint>
#include <random>

#include "sepred/linalg.hpp"

namespace sepred {

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [lo, hi].
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);
  /// Standard normal via Box–Muller.
  double normal();
  /// Standard complex Gaussian: real and imaginary parts N(0, 1/2).
  cplx complex_normal();

  /// rows x cols matrix of standard complex Gaussians.
  ComplexMatrix ginibre(std::size_t rows, std::size_t cols);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sepred
