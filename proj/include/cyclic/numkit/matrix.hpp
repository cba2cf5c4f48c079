#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace cyclic {

using Vector = std::vector<double>;

/// Dense row-major matrix of doubles. Sized for the small systems the
/// samplers and estimators build (a few dozen rows/columns at most, except
/// for design matrices which are tall and thin).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  Matrix transpose() const;
  double trace() const;
  bool all_finite() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);

/// aᵀ·b without forming the transpose.
Matrix transpose_times(const Matrix& a, const Matrix& b);
Vector transpose_times(const Matrix& a, std::span<const double> x);

/// (a + aᵀ)/2, used to scrub round-off asymmetry before a Cholesky.
Matrix symmetrized(const Matrix& a);

/// ‖a‖_F
double frobenius_norm(const Matrix& a);

Vector axpy(double alpha, std::span<const double> x, std::span<const double> y);

}  // namespace cyclic
