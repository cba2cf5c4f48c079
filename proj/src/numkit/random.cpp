#include "cyclic/numkit/random.hpp"

#include <bit>
#include <cmath>

#include "cyclic/error.hpp"

namespace cyclic {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t x = seed;
  const std::uint64_t mixed_seed = splitmix64(x);
  std::uint64_t y = stream ^ 0xD1B54A32D192ED03ULL;
  std::uint64_t state = mixed_seed ^ splitmix64(y);
  for (auto& word : s_) word = splitmix64(state);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

Rng::result_type Rng::operator()() {
  const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = std::rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double Rng::uniform_open() {
  return (static_cast<double>((*this)() >> 12) + 0.5) * 0x1.0p-52;
}

double Rng::normal() { return normal_(*this); }

Vector mvn_sample(std::span<const double> mean, const SpdMatrix& cov, Rng& rng) {
  const std::size_t d = cov.dim();
  if (mean.size() != d) fail(ErrorCode::DomainError, "mvn_sample: mean length != covariance dim");
  Vector z(d);
  for (double& v : z) v = rng.normal();
  const Matrix& l = cov.lower();
  Vector out(mean.begin(), mean.end());
  for (std::size_t i = 0; i < d; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j <= i; ++j) s += l(i, j) * z[j];
    out[i] += s;
  }
  return out;
}

double gamma_sample(double shape, double rate, Rng& rng) {
  if (!(shape > 0.0) || !(rate > 0.0) || !std::isfinite(shape) || !std::isfinite(rate)) {
    fail(ErrorCode::DomainError, "gamma_sample needs positive finite shape and rate");
  }
  if (shape < 1.0) {
    const double boost = std::pow(rng.uniform_open(), 1.0 / shape);
    return gamma_sample(shape + 1.0, rate, rng) * boost;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v / rate;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v / rate;
  }
}

}  // namespace cyclic
