#include "cyclic/estimators/covariance.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "cyclic/simd/kernels.hpp"

namespace cyclic {

namespace {

std::vector<std::vector<double>> leading_columns(const SampleMatrix& s, std::size_t count) {
  std::vector<std::vector<double>> cols(s.dim());
  for (std::size_t c = 0; c < s.dim(); ++c) cols[c] = s.column(c, count);
  return cols;
}

}  // namespace

Vector leading_mean(const SampleMatrix& s, std::size_t count) {
  Vector mean(s.dim());
  for (std::size_t c = 0; c < s.dim(); ++c) {
    const auto col = s.column(c, count);
    mean[c] = simd::sum(col) / static_cast<double>(col.size());
  }
  return mean;
}

MeanCov sample_mean_cov(const SampleMatrix& s) {
  const std::size_t n = s.rows();
  if (n < 2) fail(ErrorCode::DomainError, "sample covariance needs n >= 2");
  const auto cols = leading_columns(s, n);
  const std::size_t d = s.dim();
  Vector mean(d);
  for (std::size_t c = 0; c < d; ++c) mean[c] = simd::sum(cols[c]) / static_cast<double>(n);
  Matrix psi(d, d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      const double v =
          simd::centered_cross(cols[a], cols[b], mean[a], mean[b]) / static_cast<double>(n - 1);
      psi(a, b) = v;
      psi(b, a) = v;
    }
  }
  return {std::move(mean), CovEstimate(std::move(psi))};
}

BatchPlan BatchPlan::for_samples(std::size_t samples, double kappa) {
  if (!(kappa > 0.0 && kappa < 1.0)) fail(ErrorCode::DomainError, "batch exponent must lie in (0,1)");
  const double raw = std::floor(std::pow(static_cast<double>(samples), kappa));
  const std::size_t b = raw < 1.0 ? 1 : static_cast<std::size_t>(raw);
  BatchPlan plan = with_batch_length(samples, b);
  plan.kappa = kappa;
  return plan;
}

BatchPlan BatchPlan::with_batch_length(std::size_t samples, std::size_t batch_length) {
  if (batch_length < 1) fail(ErrorCode::DomainError, "batch length must be >= 1");
  BatchPlan plan;
  plan.b_n = batch_length;
  plan.a_n = samples / batch_length;
  plan.n = plan.a_n * plan.b_n;
  plan.kappa = std::log(static_cast<double>(batch_length)) /
               std::log(static_cast<double>(std::max<std::size_t>(samples, 2)));
  if (plan.a_n < 2) {
    fail(ErrorCode::TooFewBatches, "only " + std::to_string(plan.a_n) + " batch(es) of length " +
                                       std::to_string(batch_length) + " fit in " +
                                       std::to_string(samples) + " samples");
  }
  return plan;
}

CovEstimate batch_means_cov(const SampleMatrix& s, const BatchPlan& plan) {
  if (plan.a_n < 2) fail(ErrorCode::TooFewBatches, "batch means needs a_n >= 2");
  if (plan.a_n * plan.b_n > s.rows()) {
    fail(ErrorCode::DomainError, "batch plan uses more rows than the sample has");
  }
  const std::size_t d = s.dim();
  const std::size_t used = plan.a_n * plan.b_n;
  const auto cols = leading_columns(s, used);
  std::vector<std::vector<double>> batch_means(d, std::vector<double>(plan.a_n));
  Vector mean(d);
  for (std::size_t c = 0; c < d; ++c) {
    simd::block_sums(cols[c], plan.b_n, batch_means[c]);
    mean[c] = simd::sum(batch_means[c]) / static_cast<double>(used);
    for (double& v : batch_means[c]) v /= static_cast<double>(plan.b_n);
  }
  const double scale = static_cast<double>(plan.b_n) / static_cast<double>(plan.a_n - 1);
  Matrix sigma(d, d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      const double v =
          scale * simd::centered_cross(batch_means[a], batch_means[b], mean[a], mean[b]);
      sigma(a, b) = v;
      sigma(b, a) = v;
    }
  }
  return CovEstimate(std::move(sigma));
}

}  // namespace cyclic
