#include "cyclic/estimators/ess.hpp"

#include <cmath>

#include "cyclic/error.hpp"

namespace cyclic {

double ess(std::size_t n, const SpdMatrix& psi_hat, const SpdMatrix& sigma_hat) {
  if (psi_hat.dim() != sigma_hat.dim()) fail(ErrorCode::DomainError, "ESS: dimension mismatch");
  const double d = static_cast<double>(psi_hat.dim());
  return static_cast<double>(n) * std::exp((psi_hat.log_det() - sigma_hat.log_det()) / d);
}

double tess(std::size_t n, const Matrix& psi_hat, const Matrix& sigma_hat) {
  if (psi_hat.rows() != sigma_hat.rows()) fail(ErrorCode::DomainError, "TESS: dimension mismatch");
  const double denom = sigma_hat.trace();
  if (denom == 0.0) fail(ErrorCode::ZeroTrace, "trace of the asymptotic covariance is zero");
  return static_cast<double>(n) * psi_hat.trace() / denom;
}

}  // namespace cyclic
