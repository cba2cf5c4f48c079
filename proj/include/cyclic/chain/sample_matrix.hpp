#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cyclic/numkit/matrix.hpp"

namespace cyclic {

/// n×d matrix of f(X_t), t = 1..n, together with the cycle metadata needed
/// to recover which kernel produced each row.
///
/// Rows are zero-based in this API. Row r was produced by kernel
/// phase_of(r) = ((phase_offset − 1 + r) mod k) + 1.
class SampleMatrix {
 public:
  SampleMatrix() = default;
  SampleMatrix(std::size_t dim, int cycle_length, int phase_offset);
  SampleMatrix(std::size_t dim, int cycle_length, int phase_offset, std::vector<double> values);

  std::size_t rows() const noexcept { return dim_ == 0 ? 0 : values_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }
  int cycle_length() const noexcept { return k_; }
  int phase_offset() const noexcept { return phase_offset_; }

  int phase_of(std::size_t row) const noexcept {
    return static_cast<int>((static_cast<std::size_t>(phase_offset_ - 1) + row) %
                            static_cast<std::size_t>(k_)) +
           1;
  }

  /// Class j ∈ {0..k−1} of the row in the autocovariance indexing, i.e.
  /// the chain time modulo k (phase k maps to 0).
  int time_class_of(std::size_t row) const noexcept { return phase_of(row) % k_; }

  double operator()(std::size_t row, std::size_t col) const { return values_[row * dim_ + col]; }
  std::span<const double> row(std::size_t r) const { return {values_.data() + r * dim_, dim_}; }
  std::span<const double> values() const noexcept { return values_; }

  /// Copy of one coordinate over the first `count` rows (all rows by default).
  std::vector<double> column(std::size_t col, std::size_t count = static_cast<std::size_t>(-1)) const;

  void append(std::span<const double> row);
  void reserve(std::size_t rows) { values_.reserve(rows * dim_); }

  /// First `count` rows, same metadata.
  SampleMatrix head(std::size_t count) const;

  friend bool operator==(const SampleMatrix&, const SampleMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  int k_ = 1;
  int phase_offset_ = 1;
  std::vector<double> values_;
};

/// Rows whose phase equals `phase`, in order, as a k = 1 matrix.
/// Throws DomainError for phase outside 1..k and EmptySelection if no row
/// matches.
SampleMatrix subchain_view(const SampleMatrix& s, int phase);

}  // namespace cyclic
