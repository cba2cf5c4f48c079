#include "cyclic/chain/sample_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cyclic/error.hpp"

namespace cyclic {

SampleMatrix::SampleMatrix(std::size_t dim, int cycle_length, int phase_offset)
    : dim_(dim), k_(cycle_length), phase_offset_(phase_offset) {
  if (dim_ == 0) fail(ErrorCode::DomainError, "sample dimension must be >= 1");
  if (k_ < 1) fail(ErrorCode::DomainError, "cycle length must be >= 1");
  if (phase_offset_ < 1 || phase_offset_ > k_) {
    fail(ErrorCode::DomainError, "phase offset must lie in 1..k");
  }
}

SampleMatrix::SampleMatrix(std::size_t dim, int cycle_length, int phase_offset,
                           std::vector<double> values)
    : SampleMatrix(dim, cycle_length, phase_offset) {
  if (values.size() % dim_ != 0) fail(ErrorCode::DomainError, "values length not a multiple of d");
  for (double v : values)
    if (!std::isfinite(v)) fail(ErrorCode::DomainError, "sample values must be finite");
  values_ = std::move(values);
}

std::vector<double> SampleMatrix::column(std::size_t col, std::size_t count) const {
  const std::size_t n = std::min(count, rows());
  std::vector<double> out(n);
  for (std::size_t r = 0; r < n; ++r) out[r] = values_[r * dim_ + col];
  return out;
}

void SampleMatrix::append(std::span<const double> row) {
  if (row.size() != dim_) fail(ErrorCode::DomainError, "row length != sample dimension");
  for (double v : row) {
    if (!std::isfinite(v)) {
      fail(ErrorCode::DomainError, "non-finite f value at row " + std::to_string(rows() + 1));
    }
  }
  values_.insert(values_.end(), row.begin(), row.end());
}

SampleMatrix SampleMatrix::head(std::size_t count) const {
  const std::size_t n = std::min(count, rows());
  return SampleMatrix(dim_, k_, phase_offset_,
                      std::vector<double>(values_.begin(), values_.begin() + n * dim_));
}

SampleMatrix subchain_view(const SampleMatrix& s, int phase) {
  if (phase < 1 || phase > s.cycle_length()) {
    fail(ErrorCode::DomainError, "phase must lie in 1..k");
  }
  SampleMatrix out(s.dim(), 1, 1);
  const std::size_t k = static_cast<std::size_t>(s.cycle_length());
  std::size_t first = 0;
  while (first < k && first < s.rows() && s.phase_of(first) != phase) ++first;
  out.reserve(s.rows() / k + 1);
  for (std::size_t r = first; r < s.rows(); r += k) out.append(s.row(r));
  if (out.rows() == 0) {
    fail(ErrorCode::EmptySelection, "no rows with phase " + std::to_string(phase));
  }
  return out;
}

}  // namespace cyclic
