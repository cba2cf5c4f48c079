#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "cyclic/chain/sample_matrix.hpp"
#include "cyclic/estimators/covariance.hpp"

namespace cyclic {

/// Everything output analysis says about one chain. ess/tess are empty when
/// the covariance estimates are degenerate.
struct EstimatorReport {
  std::size_t n = 0;
  std::size_t d = 0;
  int k = 1;
  double kappa = kDefaultBatchExponent;
  std::size_t a_n = 0;
  std::size_t b_n = 0;
  Vector mean;
  Matrix psi_hat;
  Matrix sigma_bm;
  std::optional<double> ess;
  std::optional<double> tess;
};

EstimatorReport summarize(const SampleMatrix& s, double kappa = kDefaultBatchExponent);

/// {n, d, k, kappa, a_n, b_n, mean, psi_hat, sigma_bm, ess, tess}; degenerate
/// ess/tess are written as null.
std::string to_json(const EstimatorReport& r);

}  // namespace cyclic
