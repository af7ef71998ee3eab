#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "polycoho/scalar.hpp"

namespace polycoho {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix over a single field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Field field);

  static Matrix identity(std::size_t size, Field field);
  /// Rows given explicitly; all rows must have equal length and share `field`.
  static Matrix from_rows(const std::vector<Vector>& rows, Field field);
  /// Builds a matrix whose columns are the given vectors.
  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows, Field field);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Field field() const noexcept { return field_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Scalar> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  Vector column(std::size_t c) const;

  Matrix transpose() const;
  bool is_zero() const;
  bool is_symmetric() const;

  /// [this | other], same row count.
  Matrix hconcat(const Matrix& other) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, const Vector& v);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Field field_;
  std::vector<Scalar> data_;
};

/// Exact determinant. Fraction-free (Bareiss) over Q, plain elimination over F_q.
Scalar det(const Matrix& m);

/// Exact rank; same elimination strategy as det.
std::size_t rank(const Matrix& m);

/// Basis of the right kernel {v : m v = 0}, one vector per free column of the
/// reduced row echelon form (free coordinate set to 1).
std::vector<Vector> kernel_basis(const Matrix& m);

/// Some x with m x = b, or nullopt when b is outside the column space.
std::optional<Vector> solve(const Matrix& m, const Vector& b);

/// Throws Error(Singularity) if m is not invertible.
Matrix inverse(const Matrix& m);

bool is_zero_vector(const Vector& v);

}  // namespace polycoho
