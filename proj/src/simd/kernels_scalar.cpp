#include "cyclic/simd/kernels.hpp"

namespace cyclic::simd::scalar {
namespace {

double sum(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double centered_cross(const double* x, const double* y, std::size_t n, double mx, double my) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += (x[i] - mx) * (y[i] - my);
  return s;
}

void block_sums(const double* x, std::size_t blocks, std::size_t len, double* out) {
  for (std::size_t j = 0; j < blocks; ++j) out[j] = sum(x + j * len, len);
}

constexpr KernelTable kTable{sum, dot, centered_cross, block_sums};

}  // namespace

const KernelTable& table() { return kTable; }

}  // namespace cyclic::simd::scalar
