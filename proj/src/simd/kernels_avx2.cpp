// Compiled with -mavx2 -mfma when the toolchain targets x86-64; only entered
// after a runtime CPU check in dispatch.cpp.

#include "cyclic/simd/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace cyclic::simd::avx2 {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

double sum(const double* x, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_add_pd(a0, _mm256_loadu_pd(x + i));
    a1 = _mm256_add_pd(a1, _mm256_loadu_pd(x + i + 4));
  }
  if (i + 4 <= n) {
    a0 = _mm256_add_pd(a0, _mm256_loadu_pd(x + i));
    i += 4;
  }
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) s += x[i];
  return s;
}

double dot(const double* x, const double* y, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), a0);
    a1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), a1);
  }
  if (i + 4 <= n) {
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), a0);
    i += 4;
  }
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double centered_cross(const double* x, const double* y, std::size_t n, double mx, double my) {
  const __m256d vmx = _mm256_set1_pd(mx);
  const __m256d vmy = _mm256_set1_pd(my);
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d dx0 = _mm256_sub_pd(_mm256_loadu_pd(x + i), vmx);
    __m256d dy0 = _mm256_sub_pd(_mm256_loadu_pd(y + i), vmy);
    __m256d dx1 = _mm256_sub_pd(_mm256_loadu_pd(x + i + 4), vmx);
    __m256d dy1 = _mm256_sub_pd(_mm256_loadu_pd(y + i + 4), vmy);
    a0 = _mm256_fmadd_pd(dx0, dy0, a0);
    a1 = _mm256_fmadd_pd(dx1, dy1, a1);
  }
  if (i + 4 <= n) {
    __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(x + i), vmx);
    __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(y + i), vmy);
    a0 = _mm256_fmadd_pd(dx, dy, a0);
    i += 4;
  }
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) s += (x[i] - mx) * (y[i] - my);
  return s;
}

void block_sums(const double* x, std::size_t blocks, std::size_t len, double* out) {
  for (std::size_t j = 0; j < blocks; ++j) out[j] = sum(x + j * len, len);
}

constexpr KernelTable kTable{sum, dot, centered_cross, block_sums};

}  // namespace

const KernelTable& table() { return kTable; }

}  // namespace cyclic::simd::avx2

namespace cyclic::simd::detail {
bool avx2_compiled() { return true; }
}  // namespace cyclic::simd::detail

#else

namespace cyclic::simd::avx2 {
const KernelTable& table() { return scalar::table(); }
}  // namespace cyclic::simd::avx2

namespace cyclic::simd::detail {
bool avx2_compiled() { return false; }
}  // namespace cyclic::simd::detail

#endif
