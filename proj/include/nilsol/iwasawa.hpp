#pragma once

#include "nilsol/geometry.hpp"
#include "nilsol/realization.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace nilsol {

/// Field-specific copy of what the hypersurface formulas consume.
template <class F>
struct IwasawaView {
  MetricLieAlgebra<F> g;                // adapted basis [𝔫 | 𝔞 | 𝔨₀ | θ𝔫], Gram B_θ
  MetricLieAlgebra<F> n;                // 𝔫 with Gram ½B_θ
  std::vector<Vec<F>> h_vectors;        // H_λ in adapted g-coordinates
  Vec<F> mean_curvature;                // ℋ in adapted g-coordinates
  F k = 0;                              // Einstein constant of AN
};

struct IwasawaPackage {
  std::string space_id;
  CartanPackage source;
  RestrictedDecomposition decomposition;

  std::size_t dim_g = 0, dim_n = 0, dim_a = 0, dim_k0 = 0;
  // adapted basis vectors, in source coordinates
  std::vector<Vec<Rational>> adapted_basis;
  MetricLieAlgebra<Rational> g_adapted;
  // θ on the adapted basis: θ(e_i) = theta_sign[i] · e_{theta_image[i]}
  std::vector<std::size_t> theta_image;
  std::vector<int> theta_sign;
  // [begin, end) of g_λ inside the 𝔫 coordinates, per positive root
  std::vector<std::pair<std::size_t, std::size_t>> root_ranges;
  std::vector<std::size_t> root_of;  // positive root index of each 𝔫 coordinate

  MetricLieAlgebra<Rational> an_algebra;  // basis [𝔞 | 𝔫]
  MetricLieAlgebra<Rational> n_algebra;

  IwasawaView<Rational> exact;
  IwasawaView<Real> approx;

  const RootSystemData& roots() const { return decomposition.roots; }
  std::size_t a_offset() const { return dim_n; }
  std::size_t k0_offset() const { return dim_n + dim_a; }
  std::size_t neg_offset() const { return dim_n + dim_a + dim_k0; }

  template <class F>
  const IwasawaView<F>& view() const;

  // θ applied to adapted g-coordinates
  template <class F>
  Vec<F> theta(const Vec<F>& x) const {
    Vec<F> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!Field<F>::is_zero(x[i])) y[theta_image[i]] = theta_sign[i] > 0 ? x[i] : F(-x[i]);
    return y;
  }
  template <class F>
  Vec<F> embed_n(const Vec<F>& x) const {
    Vec<F> y(dim_g);
    for (std::size_t i = 0; i < dim_n; ++i) y[i] = x[i];
    return y;
  }
  template <class F>
  Vec<F> project_n(const Vec<F>& x) const {
    return Vec<F>(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(dim_n));
  }
};

template <>
inline const IwasawaView<Rational>& IwasawaPackage::view<Rational>() const { return exact; }
template <>
inline const IwasawaView<Real>& IwasawaPackage::view<Real>() const { return approx; }

std::shared_ptr<const IwasawaPackage> build_iwasawa(const CartanPackage& pkg, std::string space_id = "");
std::shared_ptr<const IwasawaPackage> build_iwasawa(const std::string& space_id);

// ⟨μ,ν⟩ = B(H_μ,H_ν) for integer combinations of simple roots
Rational killing_inner(const IwasawaPackage& iw, const std::vector<int>& mu, const std::vector<int>& nu);

// max |Γ_oracle − closed form| over 𝔞⊕𝔫 basis triples
Rational an_connection_check(const IwasawaPackage& iw);

struct MeanCurvatureCheck {
  Vec<Rational> h;          // ℋ in 𝔞 coordinates (a_basis)
  Rational trace_residual;  // mismatch with the second fundamental form trace
};
MeanCurvatureCheck mean_curvature_vector(const IwasawaPackage& iw);

struct RicciNStructure {
  Rational k;
  Rational residual;  // max |Ric^N − ad(ℋ) − k·id|
};
RicciNStructure ricci_N_structure(const IwasawaPackage& iw);

}  // namespace nilsol
