#include "quivermod/matrix.hpp"

#include "quivermod/errors.hpp"

#include <utility>

namespace quivermod {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows_ * cols_) {
    throw ValidationError("matrix data has " + std::to_string(data_.size()) +
                          " entries, expected " + std::to_string(rows_ * cols_));
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_) {
    if (!Field::is_zero(x)) return false;
  }
  return true;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) t(c, r) = a(r, c);
  }
  return t;
}

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw ValidationError("cannot multiply " + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + " by " + std::to_string(b.rows()) + "x" +
                          std::to_string(b.cols()));
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar& aik = a(i, k);
      if (Field::is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (Field::is_zero(b(k, j))) continue;
        out(i, j) = f.add(out(i, j), f.mul(aik, b(k, j)));
      }
    }
  }
  return out;
}

namespace {

void require_same_shape(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError("matrix shape mismatch");
  }
}

}  // namespace

Matrix add(const Field& f, const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  Matrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = f.add(a(r, c), b(r, c));
  }
  return out;
}

Matrix subtract(const Field& f, const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  Matrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = f.sub(a(r, c), b(r, c));
  }
  return out;
}

Matrix scale(const Field& f, const Scalar& s, const Matrix& a) {
  Matrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = f.mul(s, a(r, c));
  }
  return out;
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() + b.rows(), a.cols() + b.cols());
  place_block(out, 0, 0, a);
  place_block(out, a.rows(), a.cols(), b);
  return out;
}

void place_block(Matrix& target, std::size_t row, std::size_t col, const Matrix& block) {
  if (row + block.rows() > target.rows() || col + block.cols() > target.cols()) {
    throw ValidationError("block does not fit");
  }
  for (std::size_t r = 0; r < block.rows(); ++r) {
    for (std::size_t c = 0; c < block.cols(); ++c) target(row + r, col + c) = block(r, c);
  }
}

Matrix reduce_into(const Field& f, const Matrix& a) {
  Matrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = f.from_rational(a(r, c));
  }
  return out;
}

EchelonForm row_reduce(const Field& f, Matrix a) {
  EchelonForm result;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < a.cols() && pivot_row < a.rows(); ++col) {
    std::size_t found = a.rows();
    for (std::size_t r = pivot_row; r < a.rows(); ++r) {
      if (!Field::is_zero(a(r, col))) {
        found = r;
        break;
      }
    }
    if (found == a.rows()) continue;
    if (found != pivot_row) {
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(found, c), a(pivot_row, c));
    }
    const Scalar pivot_inv = f.inv(a(pivot_row, col));
    for (std::size_t c = col; c < a.cols(); ++c) a(pivot_row, c) = f.mul(a(pivot_row, c), pivot_inv);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == pivot_row || Field::is_zero(a(r, col))) continue;
      const Scalar factor = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c) {
        if (Field::is_zero(a(pivot_row, c))) continue;
        a(r, c) = f.sub(a(r, c), f.mul(factor, a(pivot_row, c)));
      }
    }
    result.pivot_columns.push_back(col);
    ++pivot_row;
  }
  result.reduced = std::move(a);
  return result;
}

namespace {

// Bareiss forward elimination in place. Returns the rank; `sign` records row swaps.
// After the call, the last nonzero pivot (when the matrix is square and full
// rank) is the determinant up to `sign`.
std::size_t bareiss_eliminate(const Field& f, Matrix& a, int& sign) {
  sign = 1;
  Scalar previous = f.one();
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < a.cols() && pivot_row < a.rows(); ++col) {
    std::size_t found = a.rows();
    for (std::size_t r = pivot_row; r < a.rows(); ++r) {
      if (!Field::is_zero(a(r, col))) {
        found = r;
        break;
      }
    }
    if (found == a.rows()) continue;
    if (found != pivot_row) {
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(found, c), a(pivot_row, c));
      sign = -sign;
    }
    const Scalar pivot = a(pivot_row, col);
    for (std::size_t r = pivot_row + 1; r < a.rows(); ++r) {
      const Scalar lead = a(r, col);
      for (std::size_t c = col + 1; c < a.cols(); ++c) {
        Scalar cross = f.sub(f.mul(pivot, a(r, c)), f.mul(lead, a(pivot_row, c)));
        a(r, c) = f.div(cross, previous);
      }
      a(r, col) = f.zero();
    }
    previous = pivot;
    ++pivot_row;
  }
  return pivot_row;
}

}  // namespace

std::size_t rank(const Field& f, const Matrix& a) {
  Matrix work = a;
  int sign = 1;
  return bareiss_eliminate(f, work, sign);
}

Scalar determinant(const Field& f, const Matrix& a) {
  if (!a.square()) {
    throw ValidationError("determinant of non-square " + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + " matrix");
  }
  const std::size_t n = a.rows();
  if (n == 0) return f.one();
  Matrix work = a;
  int sign = 1;
  // Full rank forces every pivot onto the diagonal, so the last diagonal
  // entry of the Bareiss form is the determinant up to sign.
  if (bareiss_eliminate(f, work, sign) < n) return f.zero();
  const Scalar& last = work(n - 1, n - 1);
  return sign > 0 ? last : f.neg(last);
}

std::optional<Matrix> inverse(const Field& f, const Matrix& a) {
  if (!a.square()) throw ValidationError("inverse of non-square matrix");
  const std::size_t n = a.rows();
  Matrix augmented(n, 2 * n);
  place_block(augmented, 0, 0, a);
  place_block(augmented, 0, n, Matrix::identity(n));
  EchelonForm e = row_reduce(f, std::move(augmented));
  if (e.rank() < n || (n > 0 && e.pivot_columns[n - 1] != n - 1)) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = e.reduced(r, n + c);
  }
  return inv;
}

Matrix kernel_basis(const Field& f, const Matrix& a) {
  EchelonForm e = row_reduce(f, a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : e.pivot_columns) is_pivot[c] = true;
  std::vector<std::size_t> free_columns;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    if (!is_pivot[c]) free_columns.push_back(c);
  }
  Matrix basis(a.cols(), free_columns.size());
  for (std::size_t k = 0; k < free_columns.size(); ++k) {
    const std::size_t free = free_columns[k];
    basis(free, k) = f.one();
    for (std::size_t r = 0; r < e.rank(); ++r) {
      basis(e.pivot_columns[r], k) = f.neg(e.reduced(r, free));
    }
  }
  return basis;
}

}  // namespace quivermod
