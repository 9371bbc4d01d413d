#pragma once

#include "nilsol/algebra.hpp"

#include <optional>

namespace nilsol {

/// ∇_{e_i} e_j = Σ_k gamma(i,j,k) e_k
template <class F>
class ConnectionTable {
 public:
  explicit ConnectionTable(std::size_t dim = 0) : dim_(dim), gamma_(dim * dim * dim) {}
  std::size_t dim() const noexcept { return dim_; }
  F& operator()(std::size_t i, std::size_t j, std::size_t k) { return gamma_[(i * dim_ + j) * dim_ + k]; }
  const F& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return gamma_[(i * dim_ + j) * dim_ + k];
  }
  Vec<F> covariant(const Vec<F>& x, const Vec<F>& y) const;

 private:
  std::size_t dim_;
  std::vector<F> gamma_;
};

template <class F>
struct SolitonVerdict {
  bool is_soliton = false;
  NumericMode mode = Field<F>::mode;
  std::optional<F> c;                  // Ric = derivation + c·id
  std::optional<Matrix<F>> derivation;
  F residual_sq = 0;                   // squared norm of the minimal defect, coordinate-wise
  F fitted_c = 0;                      // least-squares c, reported even when not a soliton

  double residual() const;
};

// Least-squares fit of t in defect(base + t·id) = 0.  Abelian input fits t = 0.
template <class F>
struct ShiftFit {
  F t = 0;
  F residual_sq = 0;
  bool bracket_free = false;
};

template <class F>
ShiftFit<F> fit_identity_shift(const MetricLieAlgebra<F>& alg, const Matrix<F>& base);

template <class F>
ConnectionTable<F> levi_civita(const MetricLieAlgebra<F>& alg);

// max deviations from torsion-freeness and metric compatibility
template <class F>
F torsion_residual(const MetricLieAlgebra<F>& alg, const ConnectionTable<F>& conn);
template <class F>
F metric_residual(const MetricLieAlgebra<F>& alg, const ConnectionTable<F>& conn);

// (0,2) Ricci tensor Ric(e_j, e_k)
template <class F>
Matrix<F> ricci_form(const MetricLieAlgebra<F>& alg);

// (1,1) Ricci operator: G^{-1}·Ric
template <class F>
Matrix<F> ricci_operator(const MetricLieAlgebra<F>& alg);

template <class F>
std::optional<F> einstein_check(const MetricLieAlgebra<F>& alg);

template <class F>
SolitonVerdict<F> soliton_decide(const MetricLieAlgebra<F>& alg);

// Two-term Ricci formula for nilpotent algebras, evaluated in an orthonormal frame (floating only).
Matrix<Real> nilpotent_ricci_two_term(const MetricLieAlgebra<Real>& alg);

}  // namespace nilsol
