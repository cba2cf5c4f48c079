#pragma once

#include <optional>

#include "cyclic/numkit/matrix.hpp"

namespace cyclic {

/// Relative pivot floor: a Cholesky pivot ≤ kPivotTolerance · max diagonal
/// is treated as a failure.
inline constexpr double kPivotTolerance = 1e-12;
/// Relative asymmetry allowed when wrapping a matrix as SpdMatrix.
inline constexpr double kSymmetryTolerance = 1e-12;

/// Lower-triangular L with L·Lᵀ = m. Throws NotPositiveDefinite.
Matrix cholesky(const Matrix& m);

/// Symmetric positive-definite matrix with its Cholesky factor cached.
/// Construction fails with NotPositiveDefinite when the factorization does.
class SpdMatrix {
 public:
  explicit SpdMatrix(Matrix m);

  /// Empty optional instead of an exception.
  static std::optional<SpdMatrix> try_make(const Matrix& m);

  std::size_t dim() const noexcept { return value_.rows(); }
  const Matrix& value() const noexcept { return value_; }
  const Matrix& lower() const noexcept { return lower_; }

  double log_det() const;
  double det() const;
  SpdMatrix inverse() const;

  /// Solves m·x = b.
  Vector solve(std::span<const double> b) const;
  /// xᵀ m⁻¹ x.
  double inverse_quadratic_form(std::span<const double> x) const;

 private:
  SpdMatrix(Matrix value, Matrix lower) : value_(std::move(value)), lower_(std::move(lower)) {}

  Matrix value_;
  Matrix lower_;
};

struct DetLogdetInverse {
  double determinant;
  double log_determinant;
  SpdMatrix inverse;
};

DetLogdetInverse det_logdet_inverse(const SpdMatrix& m);

/// Inverse of a general SPD-by-construction matrix that may be slightly
/// asymmetric from round-off; the result is symmetrized.
SpdMatrix spd_inverse(const Matrix& m);

}  // namespace cyclic
