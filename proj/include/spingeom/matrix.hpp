#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "spingeom/errors.hpp"

namespace spingeom {

/// Dense row-major matrix over an arbitrary commutative ring. Used for exact
/// representation matrices and for matrices of differential forms; floating
/// point linear algebra goes through Eigen instead.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, std::move(fill)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const { return data_; }

  Matrix transposed() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) {
    for (auto& x : a.data_) x = s * x;
    return a;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product: inner dimensions differ");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  T trace() const {
    if (!square()) throw DimensionError("trace of a non-square matrix");
    T acc{};
    for (std::size_t i = 0; i < rows_; ++i) acc += (*this)(i, i);
    return acc;
  }

 private:
  static bool is_zero(const T& x) { return x == T{}; }
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Rank of a list of vectors over a field (exact Gaussian elimination).
template <class T>
std::size_t exact_rank(std::vector<std::vector<T>> rows) {
  if (rows.empty()) return 0;
  const std::size_t width = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == T{}) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    const T inv = T(1) / rows[rank][col];
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col] == T{}) continue;
      const T f = rows[r][col] * inv;
      for (std::size_t c = col; c < width; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

/// Inverse over a field by Gauss-Jordan elimination.
template <class T>
Matrix<T> exact_inverse(Matrix<T> a) {
  if (!a.square()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix<T> inv = Matrix<T>::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == T{}) ++pivot;
    if (pivot == n) throw NotInvertible("singular matrix");
    if (pivot != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    const T p = T(1) / a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) *= p;
      inv(col, j) *= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col) == T{}) continue;
      const T f = a(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

/// Pfaffian by expansion along the first row. Works over any commutative
/// ring; the caller guarantees antisymmetry.
template <class T>
T pfaffian_expand(const Matrix<T>& a) {
  const std::size_t n = a.rows();
  if (!a.square()) throw DimensionError("Pfaffian of a non-square matrix");
  if (n % 2 != 0) throw PreconditionError("Pfaffian needs even size");
  if (n == 0) return T(1);
  T acc{};
  for (std::size_t j = 1; j < n; ++j) {
    if (a(0, j) == T{}) continue;
    Matrix<T> minor(n - 2, n - 2);
    std::size_t ri = 0;
    for (std::size_t r = 1; r < n; ++r) {
      if (r == j) continue;
      std::size_t ci = 0;
      for (std::size_t c = 1; c < n; ++c) {
        if (c == j) continue;
        minor(ri, ci++) = a(r, c);
      }
      ++ri;
    }
    T term = a(0, j) * pfaffian_expand(minor);
    if (j % 2 == 1)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

}  // namespace spingeom
