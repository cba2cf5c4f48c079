#pragma once

// Small chains with closed-form stationary behaviour, used to check the
// estimators and the regeneration machinery.

#include <array>
#include <cstddef>
#include <span>

#include "cyclic/numkit/random.hpp"

namespace cyclic {

struct FlipChainSpec {
  double a = 0.5;  ///< flip probability of kernel 1
  double b = 0.5;  ///< flip probability of kernel 2
  void validate() const;
};

/// State ±1; phase 1 flips the sign with probability a, phase 2 with
/// probability b. Uniform on {−1, +1} is stationary for both kernels.
/// f is the identity (d = 1), k = 2.
class FlipSampler {
 public:
  using State = int;

  explicit FlipSampler(FlipChainSpec spec);

  int cycle_length() const noexcept { return 2; }
  std::size_t output_dim() const noexcept { return 1; }
  void step(int& x, int phase, Rng& rng) const;
  void evaluate(int x, std::span<double> out) const { out[0] = x; }
  int initial_state() const noexcept { return 1; }
  const FlipChainSpec& spec() const noexcept { return spec_; }

 private:
  FlipChainSpec spec_;
};

FlipSampler make_flip_chain(const FlipChainSpec& spec);

/// x' = φ·x + e with e ~ N(0, σ²); k = 1, f the identity.
class Ar1Sampler {
 public:
  using State = double;

  Ar1Sampler(double phi, double innovation_sd = 1.0);

  int cycle_length() const noexcept { return 1; }
  std::size_t output_dim() const noexcept { return 1; }
  void step(double& x, int, Rng& rng) const { x = phi_ * x + sd_ * rng.normal(); }
  void evaluate(double x, std::span<double> out) const { out[0] = x; }

 private:
  double phi_;
  double sd_;
};

/// Homogeneous chain on {0, 1, 2} with a row-stochastic transition matrix;
/// f is the indicator of `indicator_state`.
class ThreeStateSampler {
 public:
  using State = int;
  using Transition = std::array<std::array<double, 3>, 3>;

  explicit ThreeStateSampler(Transition p, int indicator_state = 1);

  int cycle_length() const noexcept { return 1; }
  std::size_t output_dim() const noexcept { return 1; }
  void step(int& x, int, Rng& rng) const;
  void evaluate(int x, std::span<double> out) const { out[0] = x == indicator_ ? 1.0 : 0.0; }
  const Transition& transition() const noexcept { return p_; }

  /// Draws the next state from row `from`.
  int draw(int from, Rng& rng) const;

 private:
  Transition p_;
  int indicator_;
};

/// The rows (.5,.3,.2), (.2,.6,.2), (.3,.3,.4).
ThreeStateSampler::Transition reference_three_state_matrix();

}  // namespace cyclic
