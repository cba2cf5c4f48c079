#pragma once

#include <cstddef>
#include <optional>

#include "cyclic/chain/sample_matrix.hpp"
#include "cyclic/error.hpp"
#include "cyclic/numkit/linalg.hpp"

namespace cyclic {

/// A covariance estimate that may fail to be positive definite. Small
/// samples can legitimately produce singular estimates, so this is a
/// flagged value rather than an error; callers that need SPD use require().
struct CovEstimate {
  Matrix value;
  std::optional<SpdMatrix> spd;

  explicit CovEstimate(Matrix m) : value(std::move(m)), spd(SpdMatrix::try_make(value)) {}

  bool degenerate() const noexcept { return !spd.has_value(); }

  const SpdMatrix& require(ErrorCode code, const char* what) const {
    if (!spd) fail(code, what);
    return *spd;
  }
};

struct MeanCov {
  Vector mean;
  CovEstimate psi;  ///< sample covariance, denominator n − 1
};

/// θ̂_n and Ψ̂_n over all rows. Needs n ≥ 2.
MeanCov sample_mean_cov(const SampleMatrix& s);

inline constexpr double kDefaultBatchExponent = 0.51;

/// a_n batches of b_n consecutive samples. n is a_n·b_n, the number of
/// leading samples the estimators use.
struct BatchPlan {
  std::size_t n = 0;
  std::size_t a_n = 0;
  std::size_t b_n = 0;
  double kappa = kDefaultBatchExponent;

  /// b_n = ⌊samples^κ⌋, a_n = ⌊samples / b_n⌋. Throws TooFewBatches when
  /// a_n < 2.
  static BatchPlan for_samples(std::size_t samples, double kappa = kDefaultBatchExponent);
  /// Explicit batch length override.
  static BatchPlan with_batch_length(std::size_t samples, std::size_t batch_length);
};

/// Multivariate batch means: b_n/(a_n − 1) Σ_i (θ̂⁽ⁱ⁾ − θ̂)(θ̂⁽ⁱ⁾ − θ̂)ᵀ over the
/// first a_n·b_n rows, θ̂ being the mean of those rows.
CovEstimate batch_means_cov(const SampleMatrix& s, const BatchPlan& plan);

/// Mean of the first `count` rows.
Vector leading_mean(const SampleMatrix& s, std::size_t count);

}  // namespace cyclic
