#pragma once

// Gibbs sampler for the Bayesian linear mixed model
//
//   y = Xβ + Zγ + e,   γ ~ N(0, λ_γ⁻¹ I),   e ~ N(0, λ_e⁻¹ I),
//   β ~ N(μ_β, Σ_β),   λ_γ ~ Gamma(a_γ, b_γ),   λ_e ~ Gamma(a_e, b_e),
//
// alternating a cheap "lambda" step (both precisions given β, γ) with an
// expensive joint "beta-gamma" step.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cyclic/numkit/linalg.hpp"
#include "cyclic/numkit/random.hpp"

namespace cyclic {

/// The serializable description of a model (see lmm_to_json).
struct LmmData {
  Vector y;
  Matrix X;  ///< ñ×p fixed-effect features
  Matrix Z;  ///< ñ×g subject membership, one 1 per row
  Vector mu_beta;
  Matrix sigma_beta;
  double a_gamma = 1.0;
  double b_gamma = 1.0;
  double a_e = 1.0;
  double b_e = 1.0;
  /// Consecutive lambda steps per cycle.
  int k1 = 3;
};

/// Validated model plus the data products every step reuses.
class LmmModel {
 public:
  /// Throws DomainError for malformed inputs and NotPositiveDefinite when
  /// XᵀX or Σ_β is not positive definite.
  explicit LmmModel(LmmData data);

  const LmmData& data() const noexcept { return data_; }
  std::size_t observations() const noexcept { return data_.y.size(); }
  std::size_t fixed_effects() const noexcept { return data_.X.cols(); }
  std::size_t subjects() const noexcept { return data_.Z.cols(); }
  std::size_t subject_of(std::size_t row) const { return subject_[row]; }

  const Matrix& xtx() const noexcept { return xtx_; }
  const Matrix& xtz() const noexcept { return xtz_; }
  const Matrix& ztx() const noexcept { return ztx_; }
  const Matrix& ztz() const noexcept { return ztz_; }
  const Vector& xty() const noexcept { return xty_; }
  const Vector& zty() const noexcept { return zty_; }
  const Matrix& prior_precision() const noexcept { return prior_precision_; }
  const Vector& prior_shift() const noexcept { return prior_shift_; }

 private:
  LmmData data_;
  std::vector<std::size_t> subject_;
  Matrix xtx_, xtz_, ztx_, ztz_;
  Vector xty_, zty_;
  Matrix prior_precision_;  // Σ_β⁻¹
  Vector prior_shift_;      // Σ_β⁻¹ μ_β
};

struct LmmState {
  Vector beta;
  Vector gamma;
  double lambda_gamma = 1.0;
  double lambda_e = 1.0;
};

/// ‖y − Xβ − Zγ‖²
double residual_sum_of_squares(const LmmModel& model, const LmmState& state);

/// λ_γ ~ Gamma(a_γ + g/2, b_γ + ‖γ‖²/2), λ_e ~ Gamma(a_e + ñ/2, b_e + RSS/2).
void lambda_step(const LmmModel& model, LmmState& state, Rng& rng);

struct GaussianConditional {
  Vector mean;  ///< (β, γ) stacked
  Matrix cov;
};

/// Mean and covariance of (β, γ) | λ_γ, λ_e, y assembled block by block from
/// A_λ = (λ_e XᵀX + Σ_β⁻¹)⁻¹, B_λ = I − λ_e X A_λ Xᵀ and
/// C_λ = (λ_e Zᵀ B_λ Z + λ_γ I)⁻¹. B_λ is never formed; only its
/// projections ZᵀB_λZ and ZᵀB_λy are.
GaussianConditional beta_gamma_conditional(const LmmModel& model, double lambda_gamma,
                                           double lambda_e);

void beta_gamma_step(const LmmModel& model, LmmState& state, Rng& rng);

/// Modified deterministic-scan sampler: phases 1..k1 are lambda steps, phase
/// k1+1 the beta-gamma step. Default f = (β[coef], λ_γ).
class LmmSampler {
 public:
  using State = LmmState;
  using Function = std::function<void(const LmmState&, std::span<double>)>;

  LmmSampler(LmmModel model, std::size_t coefficient);
  LmmSampler(LmmModel model, Function f, std::size_t dim);

  int cycle_length() const noexcept { return model_.data().k1 + 1; }
  std::size_t output_dim() const noexcept { return dim_; }
  void step(LmmState& s, int phase, Rng& rng) const;
  void evaluate(const LmmState& s, std::span<double> out) const { f_(s, out); }

  /// (μ_β, 0, 1, 1)
  LmmState initial_state() const;
  const LmmModel& model() const noexcept { return model_; }

 private:
  LmmModel model_;
  Function f_;
  std::size_t dim_;
};

/// Default f targets the last fixed-effect coefficient (the sex effect for
/// the Orthodont design) and λ_γ.
LmmSampler make_lmm_sampler(const LmmModel& model);

/// Reads a CSV with columns distance, age, Subject, Sex (extra columns are
/// ignored). X = [1, age, 1{Sex = Male}], Z one-hot by subject in order of
/// first appearance, μ_β = 0, Σ_β = I₃, all Gamma hyperparameters (1, 1).
/// Throws SchemaError for missing columns and ParseError with the row
/// number for bad values.
LmmModel load_orthodont(const std::string& path, int k1 = 3);
LmmModel parse_orthodont(std::istream& is, int k1 = 3);

std::string lmm_to_json(const LmmData& data);
LmmData lmm_from_json(std::string_view json);

}  // namespace cyclic
