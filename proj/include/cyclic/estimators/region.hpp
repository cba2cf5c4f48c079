#pragma once

#include <cstddef>
#include <span>

#include "cyclic/chain/sample_matrix.hpp"
#include "cyclic/estimators/covariance.hpp"

namespace cyclic {

/// Ellipsoid {x : (θ̂ − x)ᵀ Σ̂⁻¹ (θ̂ − x) < radius2} with
/// radius2 = T²_{1−α, d, a_n − d} / n.
struct ConfidenceRegion {
  Vector center;
  SpdMatrix shape;
  double radius2 = 0.0;
  double alpha = 0.1;
  std::size_t n = 0;
  std::size_t dof = 0;

  std::size_t dim() const noexcept { return center.size(); }
  bool contains(std::span<const double> x) const;
};

/// Region from already computed pieces: centre, Σ̂ᴮᴹ, the sample count it was
/// built from and its batch count. Throws DegenerateDof when a_n ≤ 2d.
ConfidenceRegion make_region(Vector center, SpdMatrix shape, std::size_t n, std::size_t a_n,
                             double alpha);

/// Region from the first plan.n rows of s. Throws DegenerateDof, or NonSpd
/// when Σ̂ᴮᴹ is singular.
ConfidenceRegion confidence_region(const SampleMatrix& s, const BatchPlan& plan, double alpha);

/// Volume of the unit ball in ℝ^d, 2π^{d/2}/(d Γ(d/2)).
double unit_ball_volume(std::size_t d);

/// unit_ball_volume(d) · radius2^{d/2} · |Σ̂|^{1/2}
double region_volume(const ConfidenceRegion& r);

}  // namespace cyclic
