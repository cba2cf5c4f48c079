#include "cyclic/regen/split_chain.hpp"

#include <algorithm>
#include <cmath>

namespace cyclic {

double minorization_constant(const Transition3& p) {
  double s = 0.0;
  for (std::size_t v = 0; v < 3; ++v) s += std::min({p[0][v], p[1][v], p[2][v]});
  return s;
}

MinorizedKernel<int> three_state_kernel(const Transition3& p) {
  const double s = minorization_constant(p);
  MinorizedKernel<int> kernel;
  kernel.step = [p](const int& u, Rng& rng) {
    const auto& row = p[static_cast<std::size_t>(u)];
    const double x = rng.uniform();
    if (x < row[0]) return 0;
    if (x < row[0] + row[1]) return 1;
    return 2;
  };
  kernel.ratio = [p](const int& u, const int& v) {
    const auto col = static_cast<std::size_t>(v);
    const double floor = std::min({p[0][col], p[1][col], p[2][col]});
    return floor / p[static_cast<std::size_t>(u)][col];
  };
  kernel.h = [s](const int&) { return s; };
  return kernel;
}

std::array<double, 3> three_state_stationary(const Transition3& p) {
  // Solve (Pᵀ − I)π = 0 with the last equation replaced by Σπ = 1.
  double a[3][4];
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) a[i][j] = p[j][i] - (i == j ? 1.0 : 0.0);
    a[i][3] = 0.0;
  }
  for (std::size_t j = 0; j < 3; ++j) a[2][j] = 1.0;
  a[2][3] = 1.0;
  for (std::size_t c = 0; c < 3; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < 3; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    if (std::abs(a[piv][c]) < 1e-14) fail(ErrorCode::DomainError, "chain is not irreducible");
    std::swap(a[c], a[piv]);
    for (std::size_t r = 0; r < 3; ++r) {
      if (r == c) continue;
      const double m = a[r][c] / a[c][c];
      for (std::size_t j = c; j < 4; ++j) a[r][j] -= m * a[c][j];
    }
  }
  return {a[0][3] / a[0][0], a[1][3] / a[1][1], a[2][3] / a[2][2]};
}

MinorizedKernel<double> iid_normal_kernel() {
  MinorizedKernel<double> kernel;
  kernel.step = [](const double&, Rng& rng) { return rng.normal(); };
  kernel.ratio = [](const double&, const double&) { return 1.0; };
  kernel.h = [](const double&) { return 1.0; };
  return kernel;
}

MinorizedKernel<FlipBlockState> flip_block_kernel(double a, double b) {
  if (!(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0)) {
    fail(ErrorCode::DomainError, "flip probabilities must lie in (0,1)");
  }
  const double floor = std::min(a, 1.0 - a);
  MinorizedKernel<FlipBlockState> kernel;
  kernel.step = [a, b](const FlipBlockState& u, Rng& rng) {
    FlipBlockState v;
    v.mid = rng.bernoulli(a) ? -u.end : u.end;
    v.end = rng.bernoulli(b) ? -v.mid : v.mid;
    return v;
  };
  kernel.ratio = [a, floor](const FlipBlockState& u, const FlipBlockState& v) {
    return floor / (v.mid == u.end ? 1.0 - a : a);
  };
  kernel.h = [floor](const FlipBlockState&) { return 2.0 * floor; };
  return kernel;
}

void flip_block_value(const FlipBlockState&, const FlipBlockState& v, std::span<double> out) {
  out[0] = v.mid + v.end;
}

}  // namespace cyclic
