#pragma once

#include <cstddef>

#include "cyclic/numkit/linalg.hpp"

namespace cyclic {

/// Multivariate effective sample size n·(|Ψ̂|/|Σ̂|)^{1/d}, via log-determinants.
double ess(std::size_t n, const SpdMatrix& psi_hat, const SpdMatrix& sigma_hat);

/// Trace effective sample size n·tr(Ψ̂)/tr(Σ̂). Throws ZeroTrace when tr(Σ̂) = 0.
double tess(std::size_t n, const Matrix& psi_hat, const Matrix& sigma_hat);

}  // namespace cyclic
