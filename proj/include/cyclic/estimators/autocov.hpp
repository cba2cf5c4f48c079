#pragma once

#include <cstddef>
#include <vector>

#include "cyclic/chain/sample_matrix.hpp"
#include "cyclic/numkit/matrix.hpp"

namespace cyclic {

/// Phase-indexed empirical autocovariances of a cyclic chain.
///
/// cov(j, l) estimates E_π[(f(X_j) − θ)(f(X_{j+l}) − θ)ᵀ] for l ≥ 0 and
/// cov(j, −l)ᵀ for l < 0, where j ∈ {0..k−1} is the chain time modulo k
/// (rows with phase k belong to j = 0). Every product is centred at the
/// overall sample mean and each entry is divided by its number of pairs.
class AutocovTable {
 public:
  explicit AutocovTable(const SampleMatrix& s);

  std::size_t dim() const noexcept { return dim_; }
  int cycle_length() const noexcept { return k_; }
  const Vector& mean() const noexcept { return mean_; }

  /// Number of (t, t + |l|) pairs with t in class j.
  std::size_t pair_count(int j, long lag) const;

  /// Throws InsufficientLag when no pair exists, DomainError for j ∉ 0..k−1.
  Matrix autocov(int j, long lag) const;

  /// The individual centred products (f_a(X_t) − θ_a)(f_b(X_{t+l}) − θ_b)
  /// behind entry (a, b) of cov(j, l), l ≥ 0, in time order.
  std::vector<double> pair_products(int j, long lag, std::size_t a, std::size_t b) const;

 private:
  struct Pairing {
    int partner_class;
    std::size_t offset;
    std::size_t count;
  };
  Pairing pairing(int j, std::size_t lag) const;

  std::size_t rows_;
  std::size_t dim_;
  int k_;
  Vector mean_;
  std::vector<std::size_t> first_row_;                       // per class
  std::vector<std::vector<std::vector<double>>> class_cols_;  // [class][col][m]
};

/// cov(j, l) of s. Builds the table each call; use AutocovTable for many lags.
Matrix autocov(const SampleMatrix& s, int j, long lag);

/// Σ_{l=−L}^{L} Σ_j cov(j, l)/k. A slow cross-check for batch means, not a
/// production estimator. Needs L ≥ 1.
Matrix sigma_truncated_oracle(const SampleMatrix& s, long max_lag);

}  // namespace cyclic
