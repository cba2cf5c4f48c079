#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cyclic/chain/sample_matrix.hpp"
#include "cyclic/error.hpp"
#include "cyclic/numkit/random.hpp"

namespace cyclic {

/// k transition kernels applied in rotation. step(x, i, rng) applies kernel
/// K_i (i ∈ 1..k) in place; evaluate(x, out) writes f(x) ∈ ℝ^d.
template <class S>
concept CyclicSampler = requires(const S& s, typename S::State& x, const typename S::State& cx,
                                 int phase, Rng& rng, std::span<double> out) {
  { s.cycle_length() } -> std::convertible_to<int>;
  { s.output_dim() } -> std::convertible_to<std::size_t>;
  s.step(x, phase, rng);
  s.evaluate(cx, out);
};

/// Runs a cyclic sampler and records f after every kernel application.
/// The runner keeps the chain state and phase between calls to advance(), so
/// a chain can be grown in segments (the stopping rule does this) with the
/// same result as one long run. The random stream is owned by the caller.
template <CyclicSampler S>
class ChainRunner {
 public:
  using State = typename S::State;

  ChainRunner(const S& sampler, State init, Rng& rng, std::size_t burn_in = 0)
      : sampler_(&sampler),
        state_(std::move(init)),
        rng_(&rng),
        f_(sampler.output_dim()),
        samples_(sampler.output_dim(), sampler.cycle_length(),
                 static_cast<int>(burn_in % static_cast<std::size_t>(sampler.cycle_length())) + 1) {
    for (std::size_t i = 0; i < burn_in; ++i) apply_next();
  }

  /// Appends m rows.
  void advance(std::size_t m) {
    samples_.reserve(samples_.rows() + m);
    for (std::size_t i = 0; i < m; ++i) {
      apply_next();
      sampler_->evaluate(state_, f_);
      samples_.append(f_);
    }
  }

  /// Advances until `n` rows are recorded (no-op if already there).
  void advance_to(std::size_t n) {
    if (n > samples_.rows()) advance(n - samples_.rows());
  }

  const SampleMatrix& samples() const noexcept { return samples_; }
  SampleMatrix take_samples() { return std::move(samples_); }
  const State& state() const noexcept { return state_; }
  /// Total kernel applications including burn-in.
  std::uint64_t steps() const noexcept { return steps_; }
  /// Phase the next kernel application will use.
  int next_phase() const noexcept { return next_phase_; }

 private:
  void apply_next() {
    try {
      sampler_->step(state_, next_phase_, *rng_);
    } catch (const StepFailure&) {
      throw;
    } catch (const Error& e) {
      throw StepFailure(next_phase_, steps_, e.what());
    }
    ++steps_;
    next_phase_ = next_phase_ == sampler_->cycle_length() ? 1 : next_phase_ + 1;
  }

  const S* sampler_;
  State state_;
  Rng* rng_;
  std::vector<double> f_;
  SampleMatrix samples_;
  std::uint64_t steps_ = 0;
  int next_phase_ = 1;
};

/// Applies burn_in kernels, then records n rows. phase_offset of the result
/// is (burn_in mod k) + 1. Kernel errors surface as StepFailure.
template <CyclicSampler S>
SampleMatrix run_chain(const S& sampler, typename S::State init, std::size_t n,
                       std::size_t burn_in, Rng& rng) {
  if (n < 1) fail(ErrorCode::DomainError, "run_chain needs n >= 1");
  ChainRunner<S> runner(sampler, std::move(init), rng, burn_in);
  runner.advance(n);
  return runner.take_samples();
}

}  // namespace cyclic
