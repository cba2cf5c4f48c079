#pragma once

// Split-chain construction for a block chain U_t with a 1-step minorization
// K_U(u, ·) ≥ h(u)·μ(·). After each transition U_t → U_{t+1} a bell δ_t is
// drawn with success probability r(U_t, U_{t+1}) = h(U_t)·μ(dU_{t+1}) /
// K_U(U_t, dU_{t+1}). Bell times are regeneration times.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cyclic/error.hpp"
#include "cyclic/numkit/matrix.hpp"
#include "cyclic/numkit/random.hpp"

namespace cyclic {

inline constexpr double kRatioTolerance = 1e-12;

template <class State>
struct MinorizedKernel {
  /// Draws U_{t+1} ~ K_U(U_t, ·).
  std::function<State(const State&, Rng&)> step;
  /// r(u, v) ∈ [0, 1].
  std::function<double(const State&, const State&)> ratio;
  /// h(u) ∈ [0, 1].
  std::function<double(const State&)> h;
};

template <class State>
struct SplitRun {
  std::vector<State> states;         ///< U_0 … U_n
  std::vector<std::uint8_t> bells;   ///< δ_0 … δ_{n−1}
  std::size_t transitions() const noexcept { return bells.size(); }
};

/// n transitions from init. Throws RatioOutOfRange when r leaves [0, 1].
template <class State>
SplitRun<State> run_split_chain(const MinorizedKernel<State>& kernel, State init, std::size_t n,
                                Rng& rng) {
  if (n < 2) fail(ErrorCode::DomainError, "split chain needs n >= 2");
  SplitRun<State> run;
  run.states.reserve(n + 1);
  run.bells.reserve(n);
  run.states.push_back(std::move(init));
  for (std::size_t t = 0; t < n; ++t) {
    State next = kernel.step(run.states.back(), rng);
    const double r = kernel.ratio(run.states.back(), next);
    if (!(r >= 0.0 && r <= 1.0 + kRatioTolerance)) {
      fail(ErrorCode::RatioOutOfRange,
           "regeneration ratio " + std::to_string(r) + " at t = " + std::to_string(t));
    }
    run.bells.push_back(rng.bernoulli(r) ? 1 : 0);
    run.states.push_back(std::move(next));
  }
  return run;
}

/// Long-run average of h over U_0 … U_{n−1}.
template <class State>
double mean_h(const MinorizedKernel<State>& kernel, const SplitRun<State>& run) {
  double total = 0.0;
  for (std::size_t t = 0; t < run.transitions(); ++t) total += kernel.h(run.states[t]);
  return total / static_cast<double>(run.transitions());
}

/// Sum of the k f-values produced by one block transition u → v.
template <class State>
using BlockFunction = std::function<void(const State& u, const State& v, std::span<double> out)>;

/// Row t holds blockf(U_t, U_{t+1}).
template <class State>
Matrix block_values(const SplitRun<State>& run, const BlockFunction<State>& blockf,
                    std::size_t dim) {
  Matrix out(run.transitions(), dim);
  for (std::size_t t = 0; t < run.transitions(); ++t) {
    blockf(run.states[t], run.states[t + 1], out.row(t));
  }
  return out;
}

// Reference kernels.

/// The 3-state chain with μ(v) = min_u P(u,v)/s and h ≡ s = Σ_v min_u P(u,v).
using Transition3 = std::array<std::array<double, 3>, 3>;
double minorization_constant(const Transition3& p);
MinorizedKernel<int> three_state_kernel(const Transition3& p);
/// Left eigenvector of p for eigenvalue 1.
std::array<double, 3> three_state_stationary(const Transition3& p);

/// i.i.d. N(0, 1) draws: h ≡ 1 and μ = K_U(u, ·), so every step regenerates.
MinorizedKernel<double> iid_normal_kernel();

/// One full cycle of the two-kernel flip chain viewed as a homogeneous chain
/// on U = (x after kernel 1, x after kernel 2). Minorized with
/// h ≡ 2·min(a, 1−a) and μ uniform on the midpoint followed by kernel 2.
struct FlipBlockState {
  int mid = 1;
  int end = 1;
  friend bool operator==(const FlipBlockState&, const FlipBlockState&) = default;
};
MinorizedKernel<FlipBlockState> flip_block_kernel(double a, double b);
/// mid + end of the destination state.
void flip_block_value(const FlipBlockState& u, const FlipBlockState& v, std::span<double> out);

}  // namespace cyclic
