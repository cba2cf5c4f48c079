#pragma once

// Reduction kernels behind the estimators and the LMM sampler.
//
// Every kernel has a scalar reference implementation and an AVX2 variant.
// The active variant is chosen once at first use: AVX2 when the CPU reports
// it, scalar otherwise. Setting CYCLIC_SIMD=scalar (or avx2) in the
// environment overrides detection; force_isa() does the same from code.
//
// Variants agree to round-off, not bit-for-bit: the vector paths reassociate
// the sums and contract multiply-adds into FMA.

#include <cstddef>
#include <span>
#include <string_view>

namespace cyclic::simd {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

/// Whether this build and this CPU can run the given variant.
bool isa_available(Isa isa);

Isa active_isa();

/// Switches the dispatch table. Throws std::invalid_argument when the
/// variant is unavailable.
void force_isa(Isa isa);

struct KernelTable {
  /// Σ x_i
  double (*sum)(const double* x, std::size_t n);
  /// Σ x_i y_i
  double (*dot)(const double* x, const double* y, std::size_t n);
  /// Σ (x_i − mx)(y_i − my)
  double (*centered_cross)(const double* x, const double* y, std::size_t n, double mx, double my);
  /// out[j] = Σ_{i<len} x[j·len + i] for j < blocks
  void (*block_sums)(const double* x, std::size_t blocks, std::size_t len, double* out);
};

namespace scalar {
const KernelTable& table();
}
namespace avx2 {
/// Only callable when isa_available(Isa::avx2).
const KernelTable& table();
}

const KernelTable& active_table();

inline double sum(std::span<const double> x) { return active_table().sum(x.data(), x.size()); }

inline double dot(std::span<const double> x, std::span<const double> y) {
  return active_table().dot(x.data(), y.data(), x.size());
}

inline double centered_cross(std::span<const double> x, std::span<const double> y, double mx,
                             double my) {
  return active_table().centered_cross(x.data(), y.data(), x.size(), mx, my);
}

inline void block_sums(std::span<const double> x, std::size_t len, std::span<double> out) {
  active_table().block_sums(x.data(), out.size(), len, out.data());
}

}  // namespace cyclic::simd
