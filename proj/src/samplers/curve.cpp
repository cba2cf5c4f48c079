#include "cyclic/samplers/curve.hpp"

#include <cmath>
#include <string>

#include "cyclic/error.hpp"

namespace cyclic {

namespace {

// Largest x in [lo, hi] with h(x) ≤ level, given h increasing there and
// h(lo) ≤ level < h(hi).
double bisect_rising(const std::function<double(double)>& h, double lo, double hi, double level) {
  for (int i = 0; i < kRootMaxBisections; ++i) {
    if (hi - lo <= kRootTolerance) return lo;
    const double mid = 0.5 * (lo + hi);
    if (h(mid) <= level) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  fail(ErrorCode::RootFailure, "bisection did not converge on the rising side");
}

// Smallest x in [lo, hi] with h(x) ≤ level, given h decreasing there and
// h(lo) > level ≥ h(hi).
double bisect_falling(const std::function<double(double)>& h, double lo, double hi,
                      double level) {
  for (int i = 0; i < kRootMaxBisections; ++i) {
    if (hi - lo <= kRootTolerance) return hi;
    const double mid = 0.5 * (lo + hi);
    if (h(mid) <= level) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  fail(ErrorCode::RootFailure, "bisection did not converge on the falling side");
}

}  // namespace

void CurveRegionSpec::validate() const {
  if (!h) fail(ErrorCode::DomainError, "curve spec has no h");
  if (k1 < 1) fail(ErrorCode::DomainError, "k1 must be >= 1");
  if (!(x_lo < mode && mode < x_hi)) {
    fail(ErrorCode::DomainError, "curve spec needs x_lo < mode < x_hi");
  }
  const double peak = h(mode);
  if (!(peak > 0.0)) fail(ErrorCode::DomainError, "h(mode) must be positive");
  const double edge_tol = 1e-9 * peak;
  if (std::abs(h(x_lo)) > edge_tol || std::abs(h(x_hi)) > edge_tol) {
    fail(ErrorCode::DomainError, "h must vanish at both support endpoints");
  }
}

CurveRegionSpec exp_curve_spec(int k1) {
  CurveRegionSpec spec;
  spec.h = [](double x) { return 2.0 * x + 1.0 - std::exp(x); };
  spec.x_lo = 0.0;
  spec.mode = std::log(2.0);
  // e^x = 2x + 1 has its positive root in [1, 2]; h > 0 on the left part.
  double lo = 1.0;
  double hi = 2.0;
  while (hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    if (spec.h(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  spec.x_hi = hi;
  spec.k1 = k1;
  spec.validate();
  return spec;
}

void y_step(const CurveRegionSpec& spec, CurvePoint& p, Rng& rng) {
  double top = spec.h(p.x1);
  // Round-off just inside the support endpoints.
  if (top < 0.0 && top > -1e-12 && p.x1 >= spec.x_lo && p.x1 <= spec.x_hi) top = 0.0;
  if (top < 0.0) {
    fail(ErrorCode::InvalidState, "h(x1) < 0 at x1 = " + std::to_string(p.x1));
  }
  p.x2 = top * rng.uniform();
}

std::pair<double, double> level_interval(const CurveRegionSpec& spec, double x2) {
  const double peak = spec.h(spec.mode);
  if (x2 >= peak) {
    if (x2 > peak * (1.0 + 1e-12)) {
      fail(ErrorCode::RootFailure, "level " + std::to_string(x2) + " above h(mode)");
    }
    return {spec.mode, spec.mode};
  }
  if (!(spec.h(spec.x_lo) <= x2) || !(spec.h(spec.x_hi) <= x2)) {
    fail(ErrorCode::RootFailure, "level " + std::to_string(x2) + " cannot be bracketed");
  }
  return {bisect_rising(spec.h, spec.x_lo, spec.mode, x2),
          bisect_falling(spec.h, spec.mode, spec.x_hi, x2)};
}

void x_step(const CurveRegionSpec& spec, CurvePoint& p, Rng& rng) {
  const auto [left, right] = level_interval(spec, p.x2);
  p.x1 = left + (right - left) * rng.uniform();
}

CurveSampler::CurveSampler(CurveRegionSpec spec)
    : CurveSampler(std::move(spec),
                   [](const CurvePoint& p, std::span<double> out) { out[0] = p.x1 * p.x2; }, 1) {}

CurveSampler::CurveSampler(CurveRegionSpec spec, Function f, std::size_t dim)
    : spec_(std::move(spec)), f_(std::move(f)), dim_(dim) {
  spec_.validate();
  if (dim_ < 1 || !f_) fail(ErrorCode::DomainError, "curve sampler needs f with d >= 1");
}

void CurveSampler::step(CurvePoint& p, int phase, Rng& rng) const {
  if (phase <= spec_.k1) {
    y_step(spec_, p, rng);
  } else {
    x_step(spec_, p, rng);
  }
}

void CurveSampler::evaluate(const CurvePoint& p, std::span<double> out) const { f_(p, out); }

CurvePoint CurveSampler::initial_state() const {
  return {spec_.mode, 0.5 * spec_.h(spec_.mode)};
}

CurveSampler make_curve_sampler(const CurveRegionSpec& spec) { return CurveSampler(spec); }

}  // namespace cyclic
