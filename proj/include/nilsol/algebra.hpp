#pragma once

#include "nilsol/linalg.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nilsol {

template <class F>
using SparseVec = std::vector<std::pair<std::size_t, F>>;

template <class F>
struct StructureConstant {
  std::size_t i, j, k;
  F value;
};

/// Real Lie algebra on the basis e_0..e_{n-1} with [e_i,e_j] = Σ_k c_ijk e_k, plus a Gram matrix.
template <class F>
class MetricLieAlgebra {
 public:
  MetricLieAlgebra() = default;
  // Entries with i > j are accepted and mirrored; contradictory entries are rejected.
  MetricLieAlgebra(std::size_t dim, const std::vector<StructureConstant<F>>& constants, Matrix<F> gram);

  std::size_t dim() const noexcept { return dim_; }
  const Matrix<F>& gram() const noexcept { return gram_; }
  const SparseVec<F>& basis_bracket(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }
  F structure_constant(std::size_t i, std::size_t j, std::size_t k) const;

  Vec<F> bracket(const Vec<F>& x, const Vec<F>& y) const;
  F inner(const Vec<F>& x, const Vec<F>& y) const { return nilsol::inner(gram_, x, y); }

  // nonzero constants with i < j
  std::vector<StructureConstant<F>> constants() const;
  bool is_abelian() const;
  // max |Jacobi sum| over basis triples
  F jacobi_residual() const;
  MetricLieAlgebra with_gram(Matrix<F> gram) const;

 private:
  std::size_t dim_ = 0;
  std::vector<SparseVec<F>> table_;
  Matrix<F> gram_;
};

template <class F>
Vec<F> basis_vector(std::size_t dim, std::size_t i) {
  Vec<F> v(dim);
  v.at(i) = 1;
  return v;
}

template <class F>
Matrix<F> killing_form(const MetricLieAlgebra<F>& alg);

// matrix of ad(x) in the basis
template <class F>
Matrix<F> ad_matrix(const MetricLieAlgebra<F>& alg, const Vec<F>& x);

template <class F>
std::vector<Matrix<F>> derivation_space(const MetricLieAlgebra<F>& alg);

// D[e_i,e_j] − [De_i,e_j] − [e_i,De_j] for i < j in lexicographic order
template <class F>
std::vector<Vec<F>> derivation_defect(const MetricLieAlgebra<F>& alg, const Matrix<F>& d);

// Basis vectors are given in ambient coordinates; throws NotASubalgebra with a witness pair.
template <class F>
MetricLieAlgebra<F> subalgebra_restrict(const MetricLieAlgebra<F>& alg, const std::vector<Vec<F>>& basis);

// dimensions of C^1 = g, C^{k+1} = [g, C^k] until stable
template <class F>
std::vector<std::size_t> lower_central_series(const MetricLieAlgebra<F>& alg);

// smallest k with C^{k+1} = 0; nullopt if the algebra is not nilpotent
template <class F>
std::optional<int> nilpotency_degree(const MetricLieAlgebra<F>& alg);

template <class To, class From>
MetricLieAlgebra<To> convert_algebra(const MetricLieAlgebra<From>& alg) {
  std::vector<StructureConstant<To>> cs;
  for (const auto& c : alg.constants()) cs.push_back({c.i, c.j, c.k, To(c.value)});
  return MetricLieAlgebra<To>(alg.dim(), cs, convert_matrix<To>(alg.gram()));
}

// Structured text dump: {dim, mode, c: [[i,j,k,"value"]], gram: [["..."]]}
template <class F>
std::string dump_algebra(const MetricLieAlgebra<F>& alg);

template <class F>
MetricLieAlgebra<F> parse_algebra(const std::string& text);

// small reference algebras
template <class F>
MetricLieAlgebra<F> heisenberg_algebra();  // [e0,e1] = e2, orthonormal
template <class F>
MetricLieAlgebra<F> abelian_algebra(std::size_t dim);
template <class F>
MetricLieAlgebra<F> sl2_algebra();  // basis (H,E,F), Gram identity

}  // namespace nilsol
