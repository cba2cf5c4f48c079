#include <cmath>
#include <vector>

#include "cyclic/chain/sample_matrix.hpp"
#include "cyclic/estimators/covariance.hpp"
#include "cyclic/simd/kernels.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace cyclic;

namespace {

bool close(double a, double b, double scale) { return std::abs(a - b) <= 1e-12 * scale; }

/// Restores the dispatch choice on scope exit.
struct IsaGuard {
  simd::Isa saved = simd::active_isa();
  ~IsaGuard() { simd::force_isa(saved); }
};

}  // namespace

TEST_SUITE("simd") {
  TEST_CASE("scalar table is always available") {
    CHECK(simd::isa_available(simd::Isa::scalar));
    CHECK(simd::to_string(simd::Isa::scalar) == "scalar");
  }

  TEST_CASE("AVX2 kernels match the scalar reference on unaligned random input") {
    if (!simd::isa_available(simd::Isa::avx2)) {
      MESSAGE("AVX2 not available on this machine; equivalence not exercised");
      return;
    }
    const auto& ref = simd::scalar::table();
    const auto& vec = simd::avx2::table();
    oracle::Gen gen(21);
    for (std::size_t n = 0; n < 70; ++n) {
      for (std::size_t offset = 0; offset < 4; ++offset) {
        std::vector<double> xb(n + offset);
        std::vector<double> yb(n + offset);
        for (auto& v : xb) v = gen.uniform(-3.0, 3.0) + 10.0;
        for (auto& v : yb) v = gen.uniform(-3.0, 3.0);
        const double* x = xb.data() + offset;
        const double* y = yb.data() + offset;
        double scale = 1.0;
        for (std::size_t i = 0; i < n; ++i) scale += std::abs(x[i]) * (1.0 + std::abs(y[i]));
        CHECK(close(ref.sum(x, n), vec.sum(x, n), scale));
        CHECK(close(ref.dot(x, y, n), vec.dot(x, y, n), scale));
        CHECK(close(ref.centered_cross(x, y, n, 10.0, 0.1), vec.centered_cross(x, y, n, 10.0, 0.1),
                    scale));
        for (std::size_t len = 1; len <= n && len < 9; ++len) {
          const std::size_t blocks = n / len;
          std::vector<double> a(blocks);
          std::vector<double> b(blocks);
          ref.block_sums(x, blocks, len, a.data());
          vec.block_sums(x, blocks, len, b.data());
          for (std::size_t i = 0; i < blocks; ++i) CHECK(close(a[i], b[i], scale));
        }
      }
    }
  }

  TEST_CASE("batch means agree across instruction sets") {
    if (!simd::isa_available(simd::Isa::avx2)) return;
    IsaGuard guard;
    oracle::Gen gen(22);
    std::vector<double> vals(2 * 5000);
    for (auto& v : vals) v = gen.normal();
    const SampleMatrix s(2, 3, 1, vals);
    const BatchPlan plan = BatchPlan::for_samples(s.rows());
    simd::force_isa(simd::Isa::scalar);
    CHECK(simd::active_isa() == simd::Isa::scalar);
    const Matrix a = batch_means_cov(s, plan).value;
    simd::force_isa(simd::Isa::avx2);
    CHECK(simd::active_isa() == simd::Isa::avx2);
    const Matrix b = batch_means_cov(s, plan).value;
    CHECK(frobenius_norm(a - b) <= 1e-12 * frobenius_norm(a));
  }
}
