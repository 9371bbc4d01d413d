#include "nilsol/linalg.hpp"

#include <utility>

namespace nilsol {

namespace {

// Pivot choice: first nonzero entry for exact arithmetic, largest magnitude otherwise.
template <class F>
std::optional<std::size_t> choose_pivot(const Matrix<F>& m, std::size_t col, std::size_t from) {
  std::optional<std::size_t> best;
  F best_mag = 0;
  for (std::size_t r = from; r < m.rows(); ++r) {
    if (Field<F>::is_zero(m(r, col))) continue;
    if constexpr (is_exact_v<F>) {
      return r;
    } else {
      F mag = Field<F>::magnitude(m(r, col));
      if (!best || mag > best_mag) {
        best = r;
        best_mag = mag;
      }
    }
  }
  return best;
}

template <class F>
void swap_rows(Matrix<F>& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

}  // namespace

template <class F>
RowEchelon<F> row_reduce(Matrix<F> a) {
  RowEchelon<F> out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    auto p = choose_pivot(a, col, row);
    if (!p) {
      if constexpr (!is_exact_v<F>) {
        for (std::size_t r = row; r < a.rows(); ++r) a(r, col) = 0;
      }
      continue;
    }
    swap_rows(a, row, *p);
    F inv = F(1) / a(row, col);
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || Field<F>::is_zero(a(r, col))) continue;
      F factor = a(r, col);
      for (std::size_t j = col; j < a.cols(); ++j)
        if (!Field<F>::is_zero(a(row, j))) a(r, j) -= factor * a(row, j);
      a(r, col) = 0;
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(a);
  return out;
}

template <class F>
std::vector<Vec<F>> nullspace(const Matrix<F>& a) {
  auto ech = row_reduce(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::vector<Vec<F>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec<F> v(a.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = -ech.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class F>
std::size_t rank(const Matrix<F>& a) {
  return row_reduce(a).pivots.size();
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a) {
  if (a.rows() != a.cols()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return Matrix<F>();
  Matrix<F> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  auto ech = row_reduce(std::move(aug));
  if (ech.pivots.size() < n || ech.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<F> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = ech.reduced(i, n + j);
  return inv;
}

template <class F>
std::optional<Vec<F>> solve(const Matrix<F>& a, const Vec<F>& b) {
  if (a.rows() != a.cols() || b.size() != a.rows()) throw DimensionError("solve shape mismatch");
  const std::size_t n = a.rows();
  if (n == 0) return Vec<F>{};
  Matrix<F> aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  auto ech = row_reduce(std::move(aug));
  if (ech.pivots.size() < n || ech.pivots[n - 1] != n - 1) return std::nullopt;
  Vec<F> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = ech.reduced(i, n);
  return x;
}

template <class F>
bool is_positive_definite(const Matrix<F>& a) {
  if (a.rows() != a.cols()) return false;
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!Field<F>::is_zero(a(i, j) - a(j, i))) return false;
  // symmetric Gaussian elimination without pivoting: all pivots positive iff PD
  Matrix<F> m = a;
  for (std::size_t k = 0; k < n; ++k) {
    if (m(k, k) <= 0 || Field<F>::is_zero(m(k, k))) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (Field<F>::is_zero(m(i, k))) continue;
      F f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return true;
}

template <class F>
std::vector<Vec<F>> gram_schmidt(const std::vector<Vec<F>>& vectors, const Matrix<F>& gram) {
  std::vector<Vec<F>> out;
  std::vector<F> norms;
  for (const auto& v : vectors) {
    Vec<F> w = v;
    for (std::size_t k = 0; k < out.size(); ++k) {
      F coeff = inner(gram, out[k], v) / norms[k];
      axpy(w, F(-coeff), out[k]);
    }
    F nw = inner(gram, w, w);
    if (Field<F>::is_zero(nw) || is_zero(w)) continue;
    out.push_back(std::move(w));
    norms.push_back(nw);
  }
  return out;
}

template <class F>
SpanCoordinates<F>::SpanCoordinates(const std::vector<Vec<F>>& basis) : basis_(basis) {
  if (basis_.empty()) return;
  const std::size_t n = basis_.front().size();
  // rows of the transposed basis matrix: pick independent coordinates
  Matrix<F> t(basis_.size(), n);
  for (std::size_t k = 0; k < basis_.size(); ++k)
    for (std::size_t i = 0; i < n; ++i) t(k, i) = basis_[k][i];
  auto ech = row_reduce(t);
  if (ech.pivots.size() != basis_.size()) throw DimensionError("basis vectors are linearly dependent");
  rows_ = ech.pivots;
  Matrix<F> block(basis_.size(), basis_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (std::size_t k = 0; k < basis_.size(); ++k) block(r, k) = basis_[k][rows_[r]];
  block_inverse_ = *inverse(block);
}

template <class F>
std::optional<Vec<F>> SpanCoordinates<F>::coordinates(const Vec<F>& v) const {
  if (basis_.empty()) {
    if (is_zero(v)) return Vec<F>{};
    return std::nullopt;
  }
  Vec<F> rhs(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) rhs[r] = v[rows_[r]];
  Vec<F> c = block_inverse_ * rhs;
  Vec<F> residual = v;
  for (std::size_t k = 0; k < basis_.size(); ++k) axpy(residual, F(-c[k]), basis_[k]);
  if (!is_zero(residual)) return std::nullopt;
  return c;
}

#define NILSOL_INSTANTIATE(F)                                                          \
  template struct RowEchelon<F>;                                                       \
  template RowEchelon<F> row_reduce<F>(Matrix<F>);                                     \
  template std::vector<Vec<F>> nullspace<F>(const Matrix<F>&);                         \
  template std::size_t rank<F>(const Matrix<F>&);                                      \
  template std::optional<Matrix<F>> inverse<F>(const Matrix<F>&);                      \
  template std::optional<Vec<F>> solve<F>(const Matrix<F>&, const Vec<F>&);            \
  template bool is_positive_definite<F>(const Matrix<F>&);                             \
  template std::vector<Vec<F>> gram_schmidt<F>(const std::vector<Vec<F>>&, const Matrix<F>&); \
  template class SpanCoordinates<F>;

NILSOL_INSTANTIATE(Rational)
NILSOL_INSTANTIATE(Real)

#undef NILSOL_INSTANTIATE

}  // namespace nilsol
