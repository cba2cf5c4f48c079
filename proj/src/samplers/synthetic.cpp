#include "cyclic/samplers/synthetic.hpp"

#include <cmath>

#include "cyclic/error.hpp"

namespace cyclic {

void FlipChainSpec::validate() const {
  if (!(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0)) {
    fail(ErrorCode::DomainError, "flip probabilities must lie in (0,1)");
  }
}

FlipSampler::FlipSampler(FlipChainSpec spec) : spec_(spec) { spec_.validate(); }

void FlipSampler::step(int& x, int phase, Rng& rng) const {
  const double p = phase == 1 ? spec_.a : spec_.b;
  if (rng.bernoulli(p)) x = -x;
}

FlipSampler make_flip_chain(const FlipChainSpec& spec) { return FlipSampler(spec); }

Ar1Sampler::Ar1Sampler(double phi, double innovation_sd) : phi_(phi), sd_(innovation_sd) {
  if (!(std::abs(phi) < 1.0) || !(innovation_sd > 0.0)) {
    fail(ErrorCode::DomainError, "AR(1) needs |phi| < 1 and positive innovation sd");
  }
}

ThreeStateSampler::ThreeStateSampler(Transition p, int indicator_state)
    : p_(p), indicator_(indicator_state) {
  for (const auto& row : p_) {
    double s = 0.0;
    for (double v : row) {
      if (!(v >= 0.0)) fail(ErrorCode::DomainError, "transition entries must be >= 0");
      s += v;
    }
    if (std::abs(s - 1.0) > 1e-12) fail(ErrorCode::DomainError, "transition rows must sum to 1");
  }
  if (indicator_ < 0 || indicator_ > 2) fail(ErrorCode::DomainError, "indicator state in 0..2");
}

int ThreeStateSampler::draw(int from, Rng& rng) const {
  const double u = rng.uniform();
  const auto& row = p_[static_cast<std::size_t>(from)];
  if (u < row[0]) return 0;
  if (u < row[0] + row[1]) return 1;
  return 2;
}

void ThreeStateSampler::step(int& x, int, Rng& rng) const { x = draw(x, rng); }

ThreeStateSampler::Transition reference_three_state_matrix() {
  return {{{0.5, 0.3, 0.2}, {0.2, 0.6, 0.2}, {0.3, 0.3, 0.4}}};
}

}  // namespace cyclic
