#include "cyclic/numkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cyclic/error.hpp"

namespace cyclic {

namespace {

std::optional<Matrix> try_cholesky(const Matrix& m, std::string* why) {
  const std::size_t n = m.rows();
  if (!m.square() || n == 0) {
    if (why) *why = "matrix must be square with dim >= 1";
    return std::nullopt;
  }
  double max_diag = 0.0;
  double max_abs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    max_diag = std::max(max_diag, m(i, i));
    for (std::size_t j = 0; j < n; ++j) max_abs = std::max(max_abs, std::abs(m(i, j)));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (!(std::abs(m(i, j) - m(j, i)) <= kSymmetryTolerance * max_abs)) {
        if (why) *why = "matrix is not symmetric";
        return std::nullopt;
      }
    }
  }
  const double floor = kPivotTolerance * max_diag;
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = m(j, j);
    for (std::size_t p = 0; p < j; ++p) pivot -= l(j, p) * l(j, p);
    if (!(pivot > floor) || max_diag <= 0.0) {
      if (why) *why = "pivot " + std::to_string(j) + " is " + std::to_string(pivot);
      return std::nullopt;
    }
    const double ljj = std::sqrt(pivot);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (std::size_t p = 0; p < j; ++p) s -= l(i, p) * l(j, p);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

}  // namespace

Matrix cholesky(const Matrix& m) {
  std::string why;
  auto l = try_cholesky(m, &why);
  if (!l) fail(ErrorCode::NotPositiveDefinite, why);
  return std::move(*l);
}

SpdMatrix::SpdMatrix(Matrix m) : value_(std::move(m)), lower_(cholesky(value_)) {}

std::optional<SpdMatrix> SpdMatrix::try_make(const Matrix& m) {
  auto l = try_cholesky(m, nullptr);
  if (!l) return std::nullopt;
  return SpdMatrix(m, std::move(*l));
}

double SpdMatrix::log_det() const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) s += std::log(lower_(i, i));
  return 2.0 * s;
}

double SpdMatrix::det() const { return std::exp(log_det()); }

Vector SpdMatrix::solve(std::span<const double> b) const {
  const std::size_t n = dim();
  if (b.size() != n) fail(ErrorCode::DomainError, "solve: right-hand side length mismatch");
  Vector x(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < i; ++p) x[i] -= lower_(i, p) * x[p];
    x[i] /= lower_(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t p = i + 1; p < n; ++p) x[i] -= lower_(p, i) * x[p];
    x[i] /= lower_(i, i);
  }
  return x;
}

double SpdMatrix::inverse_quadratic_form(std::span<const double> x) const {
  // ‖L⁻¹x‖²
  const std::size_t n = dim();
  Vector z(x.begin(), x.end());
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < i; ++p) z[i] -= lower_(i, p) * z[p];
    z[i] /= lower_(i, i);
    q += z[i] * z[i];
  }
  return q;
}

SpdMatrix SpdMatrix::inverse() const {
  const std::size_t n = dim();
  // L⁻¹ by forward substitution, then inverse = L⁻ᵀ L⁻¹.
  Matrix linv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    linv(j, j) = 1.0 / lower_(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = 0.0;
      for (std::size_t p = j; p < i; ++p) s -= lower_(i, p) * linv(p, j);
      linv(i, j) = s / lower_(i, i);
    }
  }
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0.0;
      for (std::size_t p = i; p < n; ++p) s += linv(p, i) * linv(p, j);
      inv(i, j) = s;
      inv(j, i) = s;
    }
  }
  return SpdMatrix(std::move(inv));
}

DetLogdetInverse det_logdet_inverse(const SpdMatrix& m) {
  const double ld = m.log_det();
  return {std::exp(ld), ld, m.inverse()};
}

SpdMatrix spd_inverse(const Matrix& m) { return SpdMatrix(symmetrized(m)).inverse(); }

}  // namespace cyclic
