#include "cyclic/estimators/autocov.hpp"

#include <string>

#include "cyclic/error.hpp"
#include "cyclic/simd/kernels.hpp"

namespace cyclic {

AutocovTable::AutocovTable(const SampleMatrix& s)
    : rows_(s.rows()), dim_(s.dim()), k_(s.cycle_length()), mean_(s.dim(), 0.0) {
  if (rows_ < 2) fail(ErrorCode::InsufficientLag, "autocovariance needs at least 2 rows");
  const std::size_t k = static_cast<std::size_t>(k_);
  first_row_.assign(k, rows_);
  for (std::size_t r = 0; r < k && r < rows_; ++r) {
    first_row_[static_cast<std::size_t>(s.time_class_of(r))] = r;
  }
  class_cols_.assign(k, std::vector<std::vector<double>>(dim_));
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t r = first_row_[c]; r < rows_; r += k) {
      for (std::size_t col = 0; col < dim_; ++col) class_cols_[c][col].push_back(s(r, col));
    }
  }
  for (std::size_t col = 0; col < dim_; ++col) {
    double total = 0.0;
    for (std::size_t c = 0; c < k; ++c) total += simd::sum(class_cols_[c][col]);
    mean_[col] = total / static_cast<double>(rows_);
  }
}

AutocovTable::Pairing AutocovTable::pairing(int j, std::size_t lag) const {
  if (j < 0 || j >= k_) fail(ErrorCode::DomainError, "phase class j must lie in 0..k-1");
  const std::size_t k = static_cast<std::size_t>(k_);
  const std::size_t jc = static_cast<std::size_t>(j);
  const std::size_t partner = (jc + lag) % k;
  const std::size_t first = first_row_[jc];
  Pairing p{static_cast<int>(partner), 0, 0};
  if (first >= rows_ || first + lag >= rows_) return p;
  // Row first + m·k + lag is element m + offset of the partner class.
  p.offset = (first + lag - first_row_[partner]) / k;
  p.count = (rows_ - lag - first + k - 1) / k;
  return p;
}

std::size_t AutocovTable::pair_count(int j, long lag) const {
  return pairing(j, static_cast<std::size_t>(lag < 0 ? -lag : lag)).count;
}

Matrix AutocovTable::autocov(int j, long lag) const {
  const std::size_t abs_lag = static_cast<std::size_t>(lag < 0 ? -lag : lag);
  const Pairing p = pairing(j, abs_lag);
  if (p.count == 0) {
    fail(ErrorCode::InsufficientLag, "no pairs for class " + std::to_string(j) + " at lag " +
                                         std::to_string(lag));
  }
  const auto& lead = class_cols_[static_cast<std::size_t>(j)];
  const auto& lagged = class_cols_[static_cast<std::size_t>(p.partner_class)];
  Matrix out(dim_, dim_);
  for (std::size_t a = 0; a < dim_; ++a) {
    for (std::size_t b = 0; b < dim_; ++b) {
      const double v = simd::active_table().centered_cross(
                           lead[a].data(), lagged[b].data() + p.offset, p.count, mean_[a], mean_[b]) /
                       static_cast<double>(p.count);
      if (lag >= 0) {
        out(a, b) = v;
      } else {
        out(b, a) = v;
      }
    }
  }
  return out;
}

std::vector<double> AutocovTable::pair_products(int j, long lag, std::size_t a,
                                                std::size_t b) const {
  if (lag < 0) fail(ErrorCode::DomainError, "pair_products takes lag >= 0");
  const Pairing p = pairing(j, static_cast<std::size_t>(lag));
  const auto& x = class_cols_[static_cast<std::size_t>(j)][a];
  const auto& y = class_cols_[static_cast<std::size_t>(p.partner_class)][b];
  std::vector<double> out(p.count);
  for (std::size_t m = 0; m < p.count; ++m) {
    out[m] = (x[m] - mean_[a]) * (y[m + p.offset] - mean_[b]);
  }
  return out;
}

Matrix autocov(const SampleMatrix& s, int j, long lag) { return AutocovTable(s).autocov(j, lag); }

Matrix sigma_truncated_oracle(const SampleMatrix& s, long max_lag) {
  if (max_lag < 1) fail(ErrorCode::DomainError, "truncation lag must be >= 1");
  const AutocovTable table(s);
  const int k = table.cycle_length();
  Matrix sigma(s.dim(), s.dim());
  for (int j = 0; j < k; ++j) {
    sigma += table.autocov(j, 0);
    for (long l = 1; l <= max_lag; ++l) {
      const Matrix c = table.autocov(j, l);
      sigma += c;
      sigma += c.transpose();
    }
  }
  sigma *= 1.0 / k;
  return sigma;
}

}  // namespace cyclic
