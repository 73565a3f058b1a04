#pragma once

#include "quivermod/field.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace quivermod {

/// Dense row-major matrix of exact scalars. Zero-sized dimensions are legal.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> row_major);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Scalar> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const Scalar> data() const noexcept { return data_; }

  bool is_zero() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix transpose(const Matrix& a);
Matrix multiply(const Field& f, const Matrix& a, const Matrix& b);
Matrix add(const Field& f, const Matrix& a, const Matrix& b);
Matrix subtract(const Field& f, const Matrix& a, const Matrix& b);
Matrix scale(const Field& f, const Scalar& c, const Matrix& a);
/// Block-diagonal sum diag(a, b).
Matrix block_diagonal(const Matrix& a, const Matrix& b);
/// Copies `block` into `target` with its top-left corner at (row, col).
void place_block(Matrix& target, std::size_t row, std::size_t col, const Matrix& block);
/// Re-expresses every entry in the field; throws ValidationError if impossible.
Matrix reduce_into(const Field& f, const Matrix& a);

/// Reduced row-echelon form with pivots chosen as the first nonzero entry.
struct EchelonForm {
  Matrix reduced;
  std::vector<std::size_t> pivot_columns;
  std::size_t rank() const noexcept { return pivot_columns.size(); }
};

EchelonForm row_reduce(const Field& f, Matrix a);

/// Rank by fraction-free (Bareiss) forward elimination.
std::size_t rank(const Field& f, const Matrix& a);
/// Determinant by Bareiss elimination. Throws ValidationError when not square.
Scalar determinant(const Field& f, const Matrix& a);
/// Inverse, or nullopt when singular. Throws ValidationError when not square.
std::optional<Matrix> inverse(const Field& f, const Matrix& a);
/// Basis of {x : a x = 0}, one basis vector per column of the result.
Matrix kernel_basis(const Field& f, const Matrix& a);

}  // namespace quivermod
