#include "cyclic/samplers/lmm.hpp"

#include <cmath>
#include <string>

#include "cyclic/error.hpp"
#include "cyclic/simd/kernels.hpp"

namespace cyclic {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    fail(ErrorCode::DomainError, std::string(name) + " must be positive and finite");
  }
}

}  // namespace

LmmModel::LmmModel(LmmData data) : data_(std::move(data)) {
  const std::size_t n = data_.y.size();
  const std::size_t p = data_.X.cols();
  const std::size_t g = data_.Z.cols();
  if (n == 0 || p == 0 || g == 0) fail(ErrorCode::DomainError, "empty LMM design");
  if (data_.X.rows() != n || data_.Z.rows() != n) {
    fail(ErrorCode::DomainError, "X and Z must have one row per observation");
  }
  if (data_.mu_beta.size() != p || data_.sigma_beta.rows() != p || data_.sigma_beta.cols() != p) {
    fail(ErrorCode::DomainError, "prior mean/covariance must match the number of fixed effects");
  }
  require_positive(data_.a_gamma, "a_gamma");
  require_positive(data_.b_gamma, "b_gamma");
  require_positive(data_.a_e, "a_e");
  require_positive(data_.b_e, "b_e");
  if (data_.k1 < 1) fail(ErrorCode::DomainError, "k1 must be >= 1");

  subject_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    int ones = 0;
    for (std::size_t t = 0; t < g; ++t) {
      const double z = data_.Z(i, t);
      if (z == 1.0) {
        ++ones;
        subject_[i] = t;
      } else if (z != 0.0) {
        fail(ErrorCode::DomainError, "Z entries must be 0 or 1 (row " + std::to_string(i + 1) + ")");
      }
    }
    if (ones != 1) {
      fail(ErrorCode::DomainError, "Z row " + std::to_string(i + 1) + " must contain exactly one 1");
    }
  }

  xtx_ = transpose_times(data_.X, data_.X);
  // Full column rank check.
  (void)cholesky(xtx_);
  xtz_ = transpose_times(data_.X, data_.Z);
  ztx_ = xtz_.transpose();
  ztz_ = transpose_times(data_.Z, data_.Z);
  xty_ = transpose_times(data_.X, data_.y);
  zty_ = transpose_times(data_.Z, data_.y);
  const SpdMatrix prior(symmetrized(data_.sigma_beta));
  prior_precision_ = prior.inverse().value();
  prior_shift_ = prior.solve(data_.mu_beta);
}

double residual_sum_of_squares(const LmmModel& model, const LmmState& state) {
  const auto& d = model.data();
  const std::size_t n = model.observations();
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = d.y[i] - simd::dot(d.X.row(i), state.beta) - state.gamma[model.subject_of(i)];
  }
  return simd::dot(r, r);
}

void lambda_step(const LmmModel& model, LmmState& state, Rng& rng) {
  const auto& d = model.data();
  const double g = static_cast<double>(model.subjects());
  const double n = static_cast<double>(model.observations());
  const double gamma_norm2 = simd::dot(state.gamma, state.gamma);
  const double rss = residual_sum_of_squares(model, state);
  state.lambda_gamma = gamma_sample(d.a_gamma + g / 2.0, d.b_gamma + gamma_norm2 / 2.0, rng);
  state.lambda_e = gamma_sample(d.a_e + n / 2.0, d.b_e + rss / 2.0, rng);
}

GaussianConditional beta_gamma_conditional(const LmmModel& model, double lambda_gamma,
                                           double lambda_e) {
  if (!(lambda_gamma > 0.0) || !(lambda_e > 0.0)) {
    fail(ErrorCode::DomainError, "precisions must be positive");
  }
  const std::size_t p = model.fixed_effects();
  const std::size_t g = model.subjects();
  const double le = lambda_e;

  const Matrix a = spd_inverse(le * model.xtx() + model.prior_precision()).value();
  const Matrix a_xtz = a * model.xtz();
  Matrix ztbz = model.ztz() - le * (model.ztx() * a_xtz);
  Matrix c_inv = le * ztbz;
  for (std::size_t t = 0; t < g; ++t) c_inv(t, t) += lambda_gamma;
  const Matrix c = spd_inverse(c_inv).value();

  const Vector a_xty = a * std::span<const double>(model.xty());
  const Vector a_shift = a * std::span<const double>(model.prior_shift());
  // w = Zᵀ(B_λ y − X A_λ Σ_β⁻¹ μ_β)
  const Vector zt_x_axty = model.ztx() * std::span<const double>(a_xty);
  const Vector zt_x_ashift = model.ztx() * std::span<const double>(a_shift);
  Vector w(g);
  for (std::size_t t = 0; t < g; ++t) w[t] = model.zty()[t] - le * zt_x_axty[t] - zt_x_ashift[t];
  const Vector cw = c * std::span<const double>(w);

  Vector rhs(p);
  for (std::size_t i = 0; i < p; ++i) rhs[i] = le * model.xty()[i] + model.prior_shift()[i];
  const Vector a_rhs = a * std::span<const double>(rhs);
  const Vector axtz_cw = a_xtz * std::span<const double>(cw);

  GaussianConditional out;
  out.mean.resize(p + g);
  for (std::size_t i = 0; i < p; ++i) out.mean[i] = a_rhs[i] - le * le * axtz_cw[i];
  for (std::size_t t = 0; t < g; ++t) out.mean[p + t] = le * cw[t];

  const Matrix axtz_c = a_xtz * c;
  const Matrix beta_beta = a + (le * le) * (axtz_c * a_xtz.transpose());
  out.cov = Matrix(p + g, p + g);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) out.cov(i, j) = beta_beta(i, j);
    for (std::size_t t = 0; t < g; ++t) {
      out.cov(i, p + t) = -le * axtz_c(i, t);
      out.cov(p + t, i) = -le * axtz_c(i, t);
    }
  }
  for (std::size_t s = 0; s < g; ++s)
    for (std::size_t t = 0; t < g; ++t) out.cov(p + s, p + t) = c(s, t);
  return out;
}

void beta_gamma_step(const LmmModel& model, LmmState& state, Rng& rng) {
  const auto cond = beta_gamma_conditional(model, state.lambda_gamma, state.lambda_e);
  const SpdMatrix cov(symmetrized(cond.cov));
  const Vector draw = mvn_sample(cond.mean, cov, rng);
  const std::size_t p = model.fixed_effects();
  state.beta.assign(draw.begin(), draw.begin() + static_cast<std::ptrdiff_t>(p));
  state.gamma.assign(draw.begin() + static_cast<std::ptrdiff_t>(p), draw.end());
}

LmmSampler::LmmSampler(LmmModel model, std::size_t coefficient)
    : model_(std::move(model)), dim_(2) {
  if (coefficient >= model_.fixed_effects()) {
    fail(ErrorCode::DomainError, "coefficient index out of range");
  }
  f_ = [coefficient](const LmmState& s, std::span<double> out) {
    out[0] = s.beta[coefficient];
    out[1] = s.lambda_gamma;
  };
}

LmmSampler::LmmSampler(LmmModel model, Function f, std::size_t dim)
    : model_(std::move(model)), f_(std::move(f)), dim_(dim) {
  if (dim_ < 1 || !f_) fail(ErrorCode::DomainError, "LMM sampler needs f with d >= 1");
}

void LmmSampler::step(LmmState& s, int phase, Rng& rng) const {
  if (phase <= model_.data().k1) {
    lambda_step(model_, s, rng);
  } else {
    beta_gamma_step(model_, s, rng);
  }
}

LmmState LmmSampler::initial_state() const {
  LmmState s;
  s.beta = model_.data().mu_beta;
  s.gamma.assign(model_.subjects(), 0.0);
  s.lambda_gamma = 1.0;
  s.lambda_e = 1.0;
  return s;
}

LmmSampler make_lmm_sampler(const LmmModel& model) {
  return LmmSampler(model, model.fixed_effects() - 1);
}

}  // namespace cyclic
