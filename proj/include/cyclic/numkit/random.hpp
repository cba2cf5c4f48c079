#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <random>
#include <span>

#include "cyclic/numkit/linalg.hpp"

namespace cyclic {

/// xoshiro256** stream. Streams are derived from a (seed, stream id) pair so
/// that replication i of an experiment with seed S always sees the same
/// numbers regardless of which worker runs it. Satisfies
/// UniformRandomBitGenerator; copying a stream checkpoints it.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0x9E3779B97F4A7C15ULL) : Rng(seed, 0) {}
  Rng(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  double normal();
  bool bernoulli(double p) { return uniform() < p; }

  friend bool operator==(const Rng& a, const Rng& b) { return a.s_ == b.s_; }

 private:
  std::array<std::uint64_t, 4> s_{};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// mean + L·z with z i.i.d. standard normal, L the cached Cholesky factor.
Vector mvn_sample(std::span<const double> mean, const SpdMatrix& cov, Rng& rng);

/// Gamma with the given shape and rate (mean shape/rate). Marsaglia–Tsang for
/// shape ≥ 1; shape < 1 draws at shape+1 and multiplies by U^{1/shape}.
double gamma_sample(double shape, double rate, Rng& rng);

}  // namespace cyclic
