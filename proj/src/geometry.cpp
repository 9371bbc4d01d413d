#include "nilsol/geometry.hpp"

namespace nilsol {

template <class F>
Vec<F> ConnectionTable<F>::covariant(const Vec<F>& x, const Vec<F>& y) const {
  Vec<F> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (Field<F>::is_zero(x[i])) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (Field<F>::is_zero(y[j])) continue;
      F w = x[i] * y[j];
      for (std::size_t k = 0; k < dim_; ++k) out[k] += w * (*this)(i, j, k);
    }
  }
  return out;
}

template <class F>
double SolitonVerdict<F>::residual() const {
  if constexpr (is_exact_v<F>) {
    return std::sqrt(residual_sq.template convert_to<double>());
  } else {
    return mp::sqrt(residual_sq).template convert_to<double>();
  }
}

template <class F>
ShiftFit<F> fit_identity_shift(const MetricLieAlgebra<F>& alg, const Matrix<F>& base) {
  const std::size_t n = alg.dim();
  auto d0 = derivation_defect(alg, base);
  F db = 0;
  F bb = 0;
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++idx)
      for (const auto& [k, v] : alg.basis_bracket(i, j)) {
        db += d0[idx][k] * v;
        bb += v * v;
      }
  ShiftFit<F> fit;
  fit.bracket_free = Field<F>::is_zero(bb);
  fit.t = fit.bracket_free ? F(0) : F(db / bb);
  // defect(base + t·id) = d0 − t·[e_i,e_j]
  idx = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++idx) {
      Vec<F> r = d0[idx];
      for (const auto& [k, v] : alg.basis_bracket(i, j)) r[k] -= fit.t * v;
      for (const auto& x : r) fit.residual_sq += x * x;
    }
  return fit;
}

template <class F>
ConnectionTable<F> levi_civita(const MetricLieAlgebra<F>& alg) {
  const std::size_t n = alg.dim();
  const Matrix<F>& g = alg.gram();
  auto ginv = inverse(g);
  if (!ginv) throw DegenerateMetric("singular Gram matrix");
  // C(i,j,l) = <[e_i,e_j], e_l>
  std::vector<F> cc(n * n * n);
  auto C = [&](std::size_t i, std::size_t j, std::size_t l) -> F& { return cc[(i * n + j) * n + l]; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [m, v] : alg.basis_bracket(i, j))
        for (std::size_t l = 0; l < n; ++l)
          if (!Field<F>::is_zero(g(m, l))) C(i, j, l) += v * g(m, l);
  ConnectionTable<F> conn(n);
  Vec<F> koszul(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      bool any = false;
      for (std::size_t l = 0; l < n; ++l) {
        koszul[l] = C(i, j, l) - C(j, l, i) + C(l, i, j);
        if (!Field<F>::is_zero(koszul[l])) any = true;
      }
      if (!any) continue;
      for (std::size_t k = 0; k < n; ++k) {
        F s = 0;
        for (std::size_t l = 0; l < n; ++l)
          if (!Field<F>::is_zero(koszul[l])) s += (*ginv)(k, l) * koszul[l];
        conn(i, j, k) = s / 2;
      }
    }
  return conn;
}

template <class F>
F torsion_residual(const MetricLieAlgebra<F>& alg, const ConnectionTable<F>& conn) {
  const std::size_t n = alg.dim();
  F worst = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        F r = conn(i, j, k) - conn(j, i, k) - alg.structure_constant(i, j, k);
        F a = Field<F>::magnitude(r);
        if (a > worst) worst = a;
      }
  return worst;
}

template <class F>
F metric_residual(const MetricLieAlgebra<F>& alg, const ConnectionTable<F>& conn) {
  const std::size_t n = alg.dim();
  const Matrix<F>& g = alg.gram();
  F worst = 0;
  // <∇_i e_j, e_k> + <e_j, ∇_i e_k>
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) {
        F s = 0;
        for (std::size_t m = 0; m < n; ++m) {
          if (!Field<F>::is_zero(conn(i, j, m))) s += conn(i, j, m) * g(m, k);
          if (!Field<F>::is_zero(conn(i, k, m))) s += conn(i, k, m) * g(j, m);
        }
        F a = Field<F>::magnitude(s);
        if (a > worst) worst = a;
      }
  return worst;
}

template <class F>
Matrix<F> ricci_form(const MetricLieAlgebra<F>& alg) {
  const std::size_t n = alg.dim();
  auto conn = levi_civita(alg);
  // t_m = Σ_i Γ(i,m,i)
  Vec<F> t(n);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t i = 0; i < n; ++i) t[m] += conn(i, m, i);
  Matrix<F> ric(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      F s = 0;
      for (std::size_t m = 0; m < n; ++m)
        if (!Field<F>::is_zero(conn(j, k, m))) s += conn(j, k, m) * t[m];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t m = 0; m < n; ++m) {
          const F& a = conn(i, k, m);
          if (Field<F>::is_zero(a)) continue;
          const F& b = conn(j, m, i);
          if (!Field<F>::is_zero(b)) s -= a * b;
        }
      for (std::size_t i = 0; i < n; ++i)
        for (const auto& [m, v] : alg.basis_bracket(i, j)) {
          const F& a = conn(m, k, i);
          if (!Field<F>::is_zero(a)) s -= v * a;
        }
      ric(j, k) = s;
    }
  return ric;
}

template <class F>
Matrix<F> ricci_operator(const MetricLieAlgebra<F>& alg) {
  auto ginv = inverse(alg.gram());
  if (!ginv) throw DegenerateMetric("singular Gram matrix");
  return (*ginv) * ricci_form(alg);
}

template <class F>
std::optional<F> einstein_check(const MetricLieAlgebra<F>& alg) {
  const std::size_t n = alg.dim();
  Matrix<F> ric = ricci_operator(alg);
  if (n == 0) return F(0);
  F k = ric(0, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      F expect = i == j ? k : F(0);
      if (!Field<F>::verdict_zero(ric(i, j) - expect)) return std::nullopt;
    }
  return k;
}

namespace {

template <class F>
bool residual_vanishes(const F& residual_sq) {
  if constexpr (is_exact_v<F>) {
    return residual_sq.is_zero();
  } else {
    return residual_sq <= F(kVerdictTolerance) * F(kVerdictTolerance);
  }
}

}  // namespace

template <class F>
SolitonVerdict<F> soliton_decide(const MetricLieAlgebra<F>& alg) {
  Matrix<F> ric = ricci_operator(alg);
  // Ric − c·id derivation  ⇔  defect(Ric + t·id) = 0 with t = −c
  auto fit = fit_identity_shift(alg, ric);
  SolitonVerdict<F> v;
  v.residual_sq = fit.residual_sq;
  v.fitted_c = -fit.t;
  v.is_soliton = residual_vanishes(fit.residual_sq);
  if (v.is_soliton) {
    v.c = v.fitted_c;
    v.derivation = ric + scaled(Matrix<F>::identity(alg.dim()), fit.t);
  }
  return v;
}

Matrix<Real> nilpotent_ricci_two_term(const MetricLieAlgebra<Real>& alg) {
  const std::size_t n = alg.dim();
  const Matrix<Real>& g = alg.gram();
  // Cholesky G = L L^T; orthonormal frame f = E·L^{-T}
  Matrix<Real> l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Real d = g(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    l(j, j) = mp::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      Real s = g(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  Matrix<Real> lt = l.transpose();
  Matrix<Real> m = *inverse(lt);  // columns: frame vectors in e-coordinates
  // c_f(a,b,c) = f-coordinate c of [f_a, f_b]
  std::vector<Real> cf(n * n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Vec<Real> br = lt * alg.bracket(m.column(a), m.column(b));
      for (std::size_t c = 0; c < n; ++c) cf[(a * n + b) * n + c] = br[c];
    }
  auto cc = [&](std::size_t a, std::size_t b, std::size_t c) -> const Real& { return cf[(a * n + b) * n + c]; };
  Matrix<Real> rf(n, n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      Real s = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          s -= cc(x, i, j) * cc(y, i, j) / 2;
          s += cc(i, j, x) * cc(i, j, y) / 4;
        }
      rf(x, y) = s;
    }
  return m * rf * lt;
}

#define NILSOL_INSTANTIATE(F)                                                                 \
  template class ConnectionTable<F>;                                                          \
  template struct SolitonVerdict<F>;                                                          \
  template ShiftFit<F> fit_identity_shift<F>(const MetricLieAlgebra<F>&, const Matrix<F>&);   \
  template ConnectionTable<F> levi_civita<F>(const MetricLieAlgebra<F>&);                     \
  template F torsion_residual<F>(const MetricLieAlgebra<F>&, const ConnectionTable<F>&);      \
  template F metric_residual<F>(const MetricLieAlgebra<F>&, const ConnectionTable<F>&);       \
  template Matrix<F> ricci_form<F>(const MetricLieAlgebra<F>&);                               \
  template Matrix<F> ricci_operator<F>(const MetricLieAlgebra<F>&);                           \
  template std::optional<F> einstein_check<F>(const MetricLieAlgebra<F>&);                    \
  template SolitonVerdict<F> soliton_decide<F>(const MetricLieAlgebra<F>&);

NILSOL_INSTANTIATE(Rational)
NILSOL_INSTANTIATE(Real)

#undef NILSOL_INSTANTIATE

}  // namespace nilsol
