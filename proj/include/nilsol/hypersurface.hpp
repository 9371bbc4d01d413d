#pragma once

#include "nilsol/iwasawa.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace nilsol {

/// a = r·√d.  Exact grammar: INT, INT/INT, sINT, sINT/INT, INTsINT/INT (s = square root).
/// Decimal input is kept as its exact decimal value but marked inexact.
struct Coefficient {
  std::string text;
  Rational r = 0;
  Integer d = 1;
  bool exact = true;

  static Coefficient parse(const std::string& text);
  // exact √q for a positive rational q
  static Coefficient from_square(const Rational& q);
  Rational square() const { return r * r * Rational(d); }
  Real real() const;
  double to_double() const;
};

enum class ModeRequest { automatic, exact, floating };

struct NormalVectorSpec {
  std::vector<std::size_t> phi;     // simple root indices, 0-based Dynkin order
  std::vector<Coefficient> coeffs;  // a_γ, same order as phi
  std::optional<std::uint64_t> seed;  // random unit vectors ξ_γ; default is the first basis vector of g_γ
  std::vector<Vec<Rational>> directions;  // explicit directions of ξ_γ in 𝔫-coordinates; overrides seed

  // "alpha1=s2/2,alpha3=s2/2"
  static NormalVectorSpec parse(const std::string& text, std::optional<std::uint64_t> seed = std::nullopt);
  // single root with a = 1
  static NormalVectorSpec single(std::size_t simple_index, std::optional<std::uint64_t> seed = std::nullopt);
  std::string text() const;
  std::vector<std::string> phi_names() const;
  std::vector<std::string> coeff_texts() const;
};

// Throws InvalidSpec / DegenerateDimension when the spec cannot define a hypersurface of iw.
void validate_spec(const IwasawaPackage& iw, const NormalVectorSpec& spec);

// Exact arithmetic needs exact coefficients and a rational direction for ξ.
bool exact_mode_available(const IwasawaPackage& iw, const NormalVectorSpec& spec);

enum class SBasisKind { root_space, complement, eta };

/// 𝔰 = 𝔫 ⊖ ℝξ.  All vectors are in 𝔫-coordinates of the adapted basis.
/// In exact mode xi is a rational multiple of the unit normal; xi_norm2 carries the factor.
template <class F>
struct HypersurfaceAlgebra {
  std::shared_ptr<const IwasawaPackage> iw;
  NormalVectorSpec spec;
  Vec<F> xi;
  F xi_norm2 = 0;
  std::vector<Vec<F>> components;  // γ-component of xi, per Φ entry
  std::vector<F> a_sq;             // a_γ²
  std::vector<Vec<F>> s_basis;
  std::vector<SBasisKind> kinds;
  std::vector<std::size_t> owner;  // positive root index (root_space, complement) or Φ position (eta)
  std::vector<std::string> labels;
  MetricLieAlgebra<F> s_algebra;

  std::size_t dim() const { return s_basis.size(); }
  // coordinates in s_basis; NotTangent when v ∉ 𝔰
  Vec<F> s_coordinates(const Vec<F>& v) const;
  Vec<F> from_s(const Vec<F>& coords) const;

 private:
  std::shared_ptr<const SpanCoordinates<F>> span_;
  template <class G>
  friend HypersurfaceAlgebra<G> make_hypersurface(std::shared_ptr<const IwasawaPackage>, const NormalVectorSpec&);
};

template <class F>
HypersurfaceAlgebra<F> make_hypersurface(std::shared_ptr<const IwasawaPackage> iw, const NormalVectorSpec& spec);

// S X = −½[X,ξ] + ½[X,θξ]_𝔫 for the stored xi (the unit normal in floating mode)
template <class F>
Vec<F> shape_operator(const HypersurfaceAlgebra<F>& h, const Vec<F>& x);

// (R_ξ + S_ξ²)X = ½([[X,ξ],θξ] − [[X,θξ]_𝔫,ξ]), normalized to the unit normal
template <class F>
Vec<F> jacobi_plus_shape_sq(const HypersurfaceAlgebra<F>& h, const Vec<F>& x);

// (ad(ℋ)X)^⊤
template <class F>
Vec<F> ad_mean_curvature_tangent(const HypersurfaceAlgebra<F>& h, const Vec<F>& x);

// D₀ = (ad ℋ|𝔰)^⊤ − R_ξ − S_ξ², in s_basis coordinates
template <class F>
Matrix<F> d0_matrix(const HypersurfaceAlgebra<F>& h);

template <class F>
Matrix<F> D_endomorphism(const HypersurfaceAlgebra<F>& h, const F& c);

// max |Ric_𝔰 − k·id − D₀|
template <class F>
F gauss_residual(const HypersurfaceAlgebra<F>& h);

template <class F>
struct DualVerdict {
  SolitonVerdict<F> formula;  // c such that D₀ + c·id is a derivation
  SolitonVerdict<F> oracle;   // c such that Ric − c·id is a derivation
  F gauss_residual = 0;
  bool paths_agree = false;
  std::string disagreement;
};

template <class F>
DualVerdict<F> evaluate(const HypersurfaceAlgebra<F>& h);

// evaluate, throwing CrossCheckFailure when the two paths disagree
template <class F>
SolitonVerdict<F> soliton_decide_formula(const HypersurfaceAlgebra<F>& h);

}  // namespace nilsol
