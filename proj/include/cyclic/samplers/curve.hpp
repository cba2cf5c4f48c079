#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>

#include "cyclic/numkit/random.hpp"

namespace cyclic {

/// Region under a unimodal curve, S = {(x1, x2): x_lo ≤ x1 ≤ x_hi, 0 ≤ x2 ≤ h(x1)}.
/// h must vanish at both ends of the support, increase strictly up to the
/// mode and decrease strictly after it.
struct CurveRegionSpec {
  std::function<double(double)> h;
  double x_lo = 0.0;
  double x_hi = 0.0;
  double mode = 0.0;
  /// Consecutive y-axis steps per cycle; the cycle length is k1 + 1.
  int k1 = 1;

  /// Throws DomainError on an inconsistent spec.
  void validate() const;
};

/// h(x) = 2x + 1 − eˣ on [0, x_hi] where e^{x_hi} = 2 x_hi + 1, mode ln 2.
CurveRegionSpec exp_curve_spec(int k1);

struct CurvePoint {
  double x1 = 0.0;
  double x2 = 0.0;
  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

inline constexpr int kRootMaxBisections = 200;
inline constexpr double kRootTolerance = 1e-12;

/// Redraws x2 uniformly on [0, h(x1)]. Throws InvalidState if h(x1) < 0.
void y_step(const CurveRegionSpec& spec, CurvePoint& p, Rng& rng);

/// The horizontal slice {x1 : h(x1) ≥ x2} = [r_l, r_r], with each endpoint
/// on the outer side of its root (h(r) ≤ x2) to within kRootTolerance.
/// Throws RootFailure if the roots cannot be bracketed.
std::pair<double, double> level_interval(const CurveRegionSpec& spec, double x2);

/// Redraws x1 uniformly on level_interval(spec, x2).
void x_step(const CurveRegionSpec& spec, CurvePoint& p, Rng& rng);

/// Modified deterministic-scan Gibbs sampler on S: phases 1..k1 are y-axis
/// steps, phase k1+1 is the x-axis step. f defaults to x1·x2.
class CurveSampler {
 public:
  using State = CurvePoint;
  using Function = std::function<void(const CurvePoint&, std::span<double>)>;

  explicit CurveSampler(CurveRegionSpec spec);
  CurveSampler(CurveRegionSpec spec, Function f, std::size_t dim);

  int cycle_length() const noexcept { return spec_.k1 + 1; }
  std::size_t output_dim() const noexcept { return dim_; }

  void step(CurvePoint& p, int phase, Rng& rng) const;
  void evaluate(const CurvePoint& p, std::span<double> out) const;

  /// (mode, h(mode)/2)
  CurvePoint initial_state() const;
  const CurveRegionSpec& spec() const noexcept { return spec_; }

 private:
  CurveRegionSpec spec_;
  Function f_;
  std::size_t dim_ = 1;
};

CurveSampler make_curve_sampler(const CurveRegionSpec& spec);

}  // namespace cyclic
