#include "cyclic/estimators/region.hpp"

#include <cmath>
#include <numbers>

#include "cyclic/numkit/special.hpp"

namespace cyclic {

bool ConfidenceRegion::contains(std::span<const double> x) const {
  if (x.size() != center.size()) fail(ErrorCode::DomainError, "point dimension mismatch");
  Vector diff(center.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = center[i] - x[i];
  return shape.inverse_quadratic_form(diff) < radius2;
}

ConfidenceRegion make_region(Vector center, SpdMatrix shape, std::size_t n, std::size_t a_n,
                             double alpha) {
  const std::size_t d = center.size();
  if (a_n <= d) fail(ErrorCode::DegenerateDof, "need more batches than dimensions");
  const std::size_t dof = a_n - d;
  const double t2 =
      hotelling_t2_quantile(1.0 - alpha, static_cast<double>(d), static_cast<double>(dof));
  return ConfidenceRegion{std::move(center), std::move(shape), t2 / static_cast<double>(n), alpha,
                          n, dof};
}

ConfidenceRegion confidence_region(const SampleMatrix& s, const BatchPlan& plan, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorCode::DomainError, "alpha must lie in (0,1)");
  const CovEstimate sigma = batch_means_cov(s, plan);
  const SpdMatrix& shape = sigma.require(ErrorCode::NonSpd, "batch means estimate is singular");
  return make_region(leading_mean(s, plan.n), shape, plan.n, plan.a_n, alpha);
}

double unit_ball_volume(std::size_t d) {
  const double half = 0.5 * static_cast<double>(d);
  return 2.0 * std::pow(std::numbers::pi, half) / (static_cast<double>(d) * std::tgamma(half));
}

double region_volume(const ConfidenceRegion& r) {
  const double half = 0.5 * static_cast<double>(r.dim());
  return unit_ball_volume(r.dim()) * std::pow(r.radius2, half) * std::exp(0.5 * r.shape.log_det());
}

}  // namespace cyclic
