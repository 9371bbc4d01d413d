#pragma once

#include "nilsol/errors.hpp"
#include "nilsol/field.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace nilsol {

template <class F>
using Vec = std::vector<F>;

template <class F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }
  static Matrix from_columns(const std::vector<Vec<F>>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec<F> column(std::size_t j) const {
    Vec<F> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  Vec<F> row(std::size_t i) const {
    return Vec<F>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  void set_column(std::size_t j, const Vec<F>& v) {
    if (v.size() != rows_) throw DimensionError("column length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }
  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

template <class F>
Matrix<F> operator*(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
  Matrix<F> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const F& aik = a(i, k);
      if (Field<F>::is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <class F>
Vec<F> operator*(const Matrix<F>& a, const Vec<F>& x) {
  if (a.cols() != x.size()) throw DimensionError("matrix-vector shape mismatch");
  Vec<F> y(a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (Field<F>::is_zero(x[j])) continue;
    for (std::size_t i = 0; i < a.rows(); ++i) y[i] += a(i, j) * x[j];
  }
  return y;
}

template <class F>
Matrix<F> operator+(Matrix<F> a, const Matrix<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix sum shape mismatch");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) += b(i, j);
  return a;
}

template <class F>
Matrix<F> operator-(Matrix<F> a, const Matrix<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix difference shape mismatch");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= b(i, j);
  return a;
}

template <class F>
Matrix<F> scaled(Matrix<F> a, const F& s) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) *= s;
  return a;
}

// ---- vectors ----

template <class F>
Vec<F>& axpy(Vec<F>& y, const F& a, const Vec<F>& x) {
  if (x.size() != y.size()) throw DimensionError("axpy length mismatch");
  if (Field<F>::is_zero(a)) return y;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!Field<F>::is_zero(x[i])) y[i] += a * x[i];
  return y;
}

template <class F>
Vec<F> operator+(Vec<F> a, const Vec<F>& b) { return axpy(a, F(1), b); }
template <class F>
Vec<F> operator-(Vec<F> a, const Vec<F>& b) { return axpy(a, F(-1), b); }
template <class F>
Vec<F> operator*(const F& s, Vec<F> a) {
  for (auto& x : a) x *= s;
  return a;
}

template <class F>
F dot(const Vec<F>& a, const Vec<F>& b) {
  if (a.size() != b.size()) throw DimensionError("dot length mismatch");
  F s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!Field<F>::is_zero(a[i])) s += a[i] * b[i];
  return s;
}

// x^T G y
template <class F>
F inner(const Matrix<F>& gram, const Vec<F>& x, const Vec<F>& y) {
  if (x.size() != gram.rows() || y.size() != gram.cols()) throw DimensionError("inner product shape mismatch");
  F s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (Field<F>::is_zero(x[i])) continue;
    F row = 0;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (!Field<F>::is_zero(y[j])) row += gram(i, j) * y[j];
    s += x[i] * row;
  }
  return s;
}

template <class F>
bool is_zero(const Vec<F>& v) {
  for (const auto& x : v)
    if (!Field<F>::is_zero(x)) return false;
  return true;
}

template <class F>
F max_abs(const Vec<F>& v) {
  F m = 0;
  for (const auto& x : v) {
    F a = Field<F>::magnitude(x);
    if (a > m) m = a;
  }
  return m;
}

template <class F>
F max_abs(const Matrix<F>& a) {
  F m = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      F x = Field<F>::magnitude(a(i, j));
      if (x > m) m = x;
    }
  return m;
}

template <class To, class From>
Vec<To> convert_vec(const Vec<From>& v) {
  Vec<To> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(To(x));
  return out;
}

template <class To, class From>
Matrix<To> convert_matrix(const Matrix<From>& a) {
  Matrix<To> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = To(a(i, j));
  return out;
}

// ---- elimination kernels (instantiated for Rational and Real) ----

template <class F>
struct RowEchelon {
  Matrix<F> reduced;                 // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column per nonzero row
};

template <class F>
RowEchelon<F> row_reduce(Matrix<F> a);

template <class F>
std::vector<Vec<F>> nullspace(const Matrix<F>& a);

template <class F>
std::size_t rank(const Matrix<F>& a);

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a);

// Unique solution of a square nonsingular system.
template <class F>
std::optional<Vec<F>> solve(const Matrix<F>& a, const Vec<F>& b);

template <class F>
bool is_positive_definite(const Matrix<F>& a);

// Orthogonal (not normalized) basis of span(vectors) w.r.t. gram; dependent inputs are dropped.
template <class F>
std::vector<Vec<F>> gram_schmidt(const std::vector<Vec<F>>& vectors, const Matrix<F>& gram);

// Coordinates of vectors in the span of a fixed independent family, via a pivot-row inverse.
template <class F>
class SpanCoordinates {
 public:
  explicit SpanCoordinates(const std::vector<Vec<F>>& basis);
  std::size_t size() const noexcept { return basis_.size(); }
  // nullopt when v is not in the span
  std::optional<Vec<F>> coordinates(const Vec<F>& v) const;

 private:
  std::vector<Vec<F>> basis_;
  std::vector<std::size_t> rows_;
  Matrix<F> block_inverse_;
};

extern template struct RowEchelon<Rational>;
extern template struct RowEchelon<Real>;
extern template class SpanCoordinates<Rational>;
extern template class SpanCoordinates<Real>;

}  // namespace nilsol
