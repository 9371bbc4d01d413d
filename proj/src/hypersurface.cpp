#include "nilsol/hypersurface.hpp"

#include "nilsol/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <regex>
#include <sstream>

namespace nilsol {

Coefficient Coefficient::parse(const std::string& raw) {
  Coefficient c;
  c.text = raw;
  std::string t;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  if (t.empty()) throw InvalidSpec("empty coefficient");
  static const std::regex exact_form(R"(^(\d+)?(?:s(\d+))?(?:/(\d+))?$)");
  std::smatch m;
  if (std::regex_match(t, m, exact_form) && (m[1].matched || m[2].matched)) {
    Integer num = m[1].matched ? Integer(m[1].str()) : Integer(1);
    Integer den = m[3].matched ? Integer(m[3].str()) : Integer(1);
    if (den == 0) throw InvalidSpec("zero denominator in '" + raw + "'");
    c.r = Rational(num, den);
    c.d = m[2].matched ? Integer(m[2].str()) : Integer(1);
    if (c.d == 0) c.r = 0, c.d = 1;
    // pull square factors out of the radicand
    for (Integer f = 2; f * f <= c.d; ++f)
      while (c.d % (f * f) == 0) {
        c.d /= f * f;
        c.r *= Rational(f);
      }
    if (c.r == 0) throw InvalidSpec("coefficient must be positive: '" + raw + "'");
    c.exact = true;
    return c;
  }
  try {
    c.r = parse_rational(t);
  } catch (const std::exception&) {
    throw InvalidSpec("cannot parse coefficient '" + raw + "'");
  }
  if (c.r <= 0) throw InvalidSpec("coefficient must be positive: '" + raw + "'");
  c.exact = false;
  return c;
}

Coefficient Coefficient::from_square(const Rational& q) {
  if (q <= 0) throw InvalidSpec("coefficient square must be positive");
  // √(p/r) = √(p·r)/r
  Integer p = mp::numerator(q), r = mp::denominator(q);
  Integer d = p * r;
  Integer outside = 1;
  for (Integer f = 2; f * f <= d; ++f)
    while (d % (f * f) == 0) {
      d /= f * f;
      outside *= f;
    }
  Rational value(outside, r);
  std::string text = (mp::numerator(value) == 1 && d != 1 ? std::string() : mp::numerator(value).str()) +
                     (d == 1 ? std::string() : "s" + d.str()) +
                     (mp::denominator(value) == 1 ? std::string() : "/" + mp::denominator(value).str());
  return parse(text);
}

Real Coefficient::real() const { return Real(r) * mp::sqrt(Real(d)); }

double Coefficient::to_double() const { return real().convert_to<double>(); }

NormalVectorSpec NormalVectorSpec::parse(const std::string& text, std::optional<std::uint64_t> seed) {
  NormalVectorSpec spec;
  spec.seed = seed;
  std::vector<std::pair<std::size_t, Coefficient>> items;
  std::stringstream ss(text);
  std::string item;
  static const std::regex entry(R"(^\s*alpha(\d+)\s*=\s*(.+?)\s*$)");
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::smatch m;
    if (!std::regex_match(item, m, entry)) {
      auto eq = item.find('=');
      std::string name = item.substr(0, eq);
      throw InvalidSpec("'" + name + "' is not a simple root name (expected alphaK)");
    }
    long k = std::stol(m[1].str());
    if (k < 1) throw InvalidSpec("simple roots are numbered from 1");
    auto idx = static_cast<std::size_t>(k - 1);
    for (const auto& [j, unused] : items)
      if (j == idx) throw InvalidSpec("alpha" + m[1].str() + " listed twice");
    items.emplace_back(idx, Coefficient::parse(m[2].str()));
  }
  if (items.empty()) throw InvalidSpec("empty Φ");
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [idx, c] : items) {
    spec.phi.push_back(idx);
    spec.coeffs.push_back(std::move(c));
  }
  return spec;
}

NormalVectorSpec NormalVectorSpec::single(std::size_t simple_index, std::optional<std::uint64_t> seed) {
  NormalVectorSpec spec;
  spec.phi = {simple_index};
  spec.coeffs = {Coefficient::parse("1")};
  spec.seed = seed;
  return spec;
}

std::vector<std::string> NormalVectorSpec::phi_names() const {
  std::vector<std::string> out;
  for (auto i : phi) out.push_back("alpha" + std::to_string(i + 1));
  return out;
}

std::vector<std::string> NormalVectorSpec::coeff_texts() const {
  std::vector<std::string> out;
  for (const auto& c : coeffs) out.push_back(c.text);
  return out;
}

std::string NormalVectorSpec::text() const {
  std::string out;
  auto names = phi_names();
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (i) out += ",";
    out += names[i] + "=" + coeffs[i].text;
  }
  return out;
}

void validate_spec(const IwasawaPackage& iw, const NormalVectorSpec& spec) {
  if (iw.dim_n <= 1) throw DegenerateDimension("dim 𝔫 = " + std::to_string(iw.dim_n) + " leaves a zero-dimensional 𝔰");
  if (spec.phi.empty() || spec.phi.size() != spec.coeffs.size()) throw InvalidSpec("Φ and coefficients do not match");
  bool all_exact = true;
  Rational sum = 0;
  double fsum = 0;
  for (std::size_t p = 0; p < spec.phi.size(); ++p) {
    if (spec.phi[p] >= static_cast<std::size_t>(iw.roots().rank()))
      throw InvalidSpec("alpha" + std::to_string(spec.phi[p] + 1) + " is not a simple root of " + iw.roots().simple().label());
    if (spec.coeffs[p].r <= 0) throw InvalidSpec("coefficient '" + spec.coeffs[p].text + "' is not positive");
    all_exact = all_exact && spec.coeffs[p].exact;
    sum += spec.coeffs[p].square();
    fsum += spec.coeffs[p].to_double() * spec.coeffs[p].to_double();
  }
  if (all_exact && sum != 1) throw InvalidSpec("Σ a² = " + Field<Rational>::str(sum) + ", not 1");
  if (!all_exact && std::abs(fsum - 1.0) > 1e-6) throw InvalidSpec("Σ a² = " + std::to_string(fsum) + " is not 1 within 1e-6");
}

namespace {

// Rational vector inside g_γ (𝔫-coordinates) used as the direction of ξ_γ.
std::vector<Vec<Rational>> unit_directions(const IwasawaPackage& iw, const NormalVectorSpec& spec) {
  std::vector<Vec<Rational>> out;
  std::optional<std::mt19937_64> rng;
  if (spec.seed) rng.emplace(*spec.seed);
  if (!spec.directions.empty() && spec.directions.size() != spec.phi.size())
    throw InvalidSpec("one direction per root of Φ is required");
  for (std::size_t p = 0; p < spec.phi.size(); ++p) {
    std::size_t idx = iw.roots().simple_index(spec.phi[p]);
    auto [begin, end] = iw.root_ranges[idx];
    Vec<Rational> v(iw.dim_n);
    if (!spec.directions.empty()) {
      v = spec.directions[p];
      bool nonzero = false;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        if (i < begin || i >= end) throw InvalidSpec("direction of ξ_γ leaves g_γ");
        nonzero = true;
      }
      if (!nonzero || v.size() != iw.dim_n) throw InvalidSpec("degenerate direction for ξ_γ");
    } else if (!rng) {
      v[begin] = 1;
    } else {
      bool nonzero = false;
      while (!nonzero) {
        for (std::size_t i = begin; i < end; ++i) {
          v[i] = static_cast<long>((*rng)() % 11) - 5;
          nonzero = nonzero || !v[i].is_zero();
        }
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

// ρ_γ with C_γ = ρ_γ v_γ ∝ a_γ v_γ/|v_γ|, normalized so that ρ_0 = 1
std::optional<std::vector<Rational>> rational_ratios(const IwasawaPackage& iw, const NormalVectorSpec& spec,
                                                     const std::vector<Vec<Rational>>& dirs) {
  for (const auto& c : spec.coeffs)
    if (!c.exact) return std::nullopt;
  std::vector<Rational> rho;
  Rational base = 0;
  for (std::size_t p = 0; p < dirs.size(); ++p) {
    Rational w = spec.coeffs[p].square() / iw.n_algebra.inner(dirs[p], dirs[p]);
    if (p == 0) base = w;
    Rational root;
    if (!rational_sqrt(w / base, root)) return std::nullopt;
    rho.push_back(root);
  }
  return rho;
}

template <class F>
bool verdict_vanishes(const F& residual_sq) {
  if constexpr (is_exact_v<F>)
    return residual_sq.is_zero();
  else
    return residual_sq <= F(kVerdictTolerance) * F(kVerdictTolerance);
}

}  // namespace

bool exact_mode_available(const IwasawaPackage& iw, const NormalVectorSpec& spec) {
  validate_spec(iw, spec);
  return rational_ratios(iw, spec, unit_directions(iw, spec)).has_value();
}

template <class F>
Vec<F> HypersurfaceAlgebra<F>::s_coordinates(const Vec<F>& v) const {
  auto c = span_->coordinates(v);
  if (!c) throw NotTangent("vector is not in 𝔰");
  return *c;
}

template <class F>
Vec<F> HypersurfaceAlgebra<F>::from_s(const Vec<F>& coords) const {
  Vec<F> v(iw->dim_n);
  for (std::size_t k = 0; k < coords.size(); ++k) axpy(v, coords[k], s_basis[k]);
  return v;
}

template <class F>
HypersurfaceAlgebra<F> make_hypersurface(std::shared_ptr<const IwasawaPackage> iw, const NormalVectorSpec& spec) {
  validate_spec(*iw, spec);
  const auto& view = iw->view<F>();
  const std::size_t dn = iw->dim_n;
  HypersurfaceAlgebra<F> h;
  h.iw = iw;
  h.spec = spec;

  auto dirs = unit_directions(*iw, spec);
  if constexpr (is_exact_v<F>) {
    auto rho = rational_ratios(*iw, spec, dirs);
    if (!rho) throw InvalidSpec("exact arithmetic needs exact coefficients with a rational normal direction: " + spec.text());
    for (std::size_t p = 0; p < dirs.size(); ++p) h.components.push_back((*rho)[p] * dirs[p]);
  } else {
    Real total = 0;
    for (const auto& c : spec.coeffs) total += c.real() * c.real();
    Real norm = mp::sqrt(total);
    for (std::size_t p = 0; p < dirs.size(); ++p) {
      Vec<Real> v = convert_vec<Real>(dirs[p]);
      Real len = mp::sqrt(view.n.inner(v, v));
      h.components.push_back(Real(spec.coeffs[p].real() / norm / len) * v);
    }
  }
  h.xi = Vec<F>(dn);
  for (const auto& c : h.components) h.xi = h.xi + c;
  h.xi_norm2 = view.n.inner(h.xi, h.xi);
  for (const auto& c : h.components) h.a_sq.push_back(view.n.inner(c, c) / h.xi_norm2);

  auto in_phi = [&](std::size_t root_idx) -> std::optional<std::size_t> {
    for (std::size_t p = 0; p < spec.phi.size(); ++p)
      if (iw->roots().simple_index(spec.phi[p]) == root_idx) return p;
    return std::nullopt;
  };
  for (std::size_t idx = 0; idx < iw->roots().size(); ++idx) {
    if (in_phi(idx)) continue;
    auto [begin, end] = iw->root_ranges[idx];
    for (std::size_t i = begin; i < end; ++i) {
      h.s_basis.push_back(basis_vector<F>(dn, i));
      h.kinds.push_back(SBasisKind::root_space);
      h.owner.push_back(idx);
      h.labels.push_back("g_" + root_name(iw->roots().root(idx)) + "[" + std::to_string(i - begin) + "]");
    }
  }
  for (std::size_t p = 0; p < spec.phi.size(); ++p) {
    std::size_t idx = iw->roots().simple_index(spec.phi[p]);
    auto [begin, end] = iw->root_ranges[idx];
    const Vec<F>& c = h.components[p];
    F cc = view.n.inner(c, c);
    std::vector<Vec<F>> raw;
    for (std::size_t i = begin; i < end; ++i) {
      Vec<F> e = basis_vector<F>(dn, i);
      axpy(e, F(-view.n.inner(e, c) / cc), c);
      raw.push_back(std::move(e));
    }
    auto orth = gram_schmidt(raw, view.n.gram());
    if (orth.size() + 1 != end - begin) throw ConstructionError("complement of ξ_γ has the wrong dimension");
    for (std::size_t k = 0; k < orth.size(); ++k) {
      h.s_basis.push_back(std::move(orth[k]));
      h.kinds.push_back(SBasisKind::complement);
      h.owner.push_back(idx);
      h.labels.push_back("g_" + root_name(iw->roots().root(idx)) + "-xi[" + std::to_string(k) + "]");
    }
  }
  for (std::size_t p = 1; p < spec.phi.size(); ++p) {
    Vec<F> eta = h.a_sq[p] * h.components[0];
    axpy(eta, F(-h.a_sq[0]), h.components[p]);
    h.s_basis.push_back(std::move(eta));
    h.kinds.push_back(SBasisKind::eta);
    h.owner.push_back(p);
    auto names = spec.phi_names();
    h.labels.push_back("eta(" + names[0] + "," + names[p] + ")");
  }
  if (h.s_basis.size() + 1 != dn) throw ConstructionError("𝔰 does not have codimension one");
  for (const auto& b : h.s_basis)
    if (!Field<F>::is_zero(view.n.inner(b, h.xi))) throw ConstructionError("𝔰 basis vector not orthogonal to ξ");

  h.s_algebra = subalgebra_restrict(view.n, h.s_basis);
  h.span_ = std::make_shared<SpanCoordinates<F>>(h.s_basis);
  // normality: [𝔰, 𝔫] ⊂ 𝔰
  for (std::size_t i = 0; i < h.s_basis.size(); ++i)
    for (std::size_t j = 0; j < dn; ++j)
      if (!Field<F>::is_zero(view.n.inner(view.n.bracket(h.s_basis[i], basis_vector<F>(dn, j)), h.xi)))
        throw NotASubalgebra(i, j);
  return h;
}

namespace {

template <class F>
void require_tangent(const HypersurfaceAlgebra<F>& h, const Vec<F>& x) {
  const auto& view = h.iw->template view<F>();
  if (x.size() != h.iw->dim_n) throw DimensionError("expected a vector in 𝔫-coordinates");
  if (!Field<F>::is_zero(view.n.inner(x, h.xi))) throw NotTangent("vector has a component along ξ");
}

template <class F>
Vec<F> n_part(const IwasawaPackage& iw, const Vec<F>& g_vec, const char* what) {
  for (std::size_t i = iw.dim_n; i < g_vec.size(); ++i)
    if (!Field<F>::is_zero(g_vec[i])) throw StructureMismatch(std::string(what) + " leaves 𝔫");
  return iw.project_n(g_vec);
}

}  // namespace

template <class F>
Vec<F> shape_operator(const HypersurfaceAlgebra<F>& h, const Vec<F>& x) {
  require_tangent(h, x);
  const auto& iw = *h.iw;
  const auto& g = iw.template view<F>().g;
  Vec<F> X = iw.embed_n(x), U = iw.embed_n(h.xi);
  Vec<F> out = F(-1) / 2 * iw.project_n(g.bracket(X, U));
  axpy(out, F(1) / 2, iw.project_n(g.bracket(X, iw.theta(U))));
  if (!Field<F>::is_zero(iw.template view<F>().n.inner(out, h.xi))) throw StructureMismatch("S_ξ X is not tangent");
  return out;
}

template <class F>
Vec<F> jacobi_plus_shape_sq(const HypersurfaceAlgebra<F>& h, const Vec<F>& x) {
  require_tangent(h, x);
  const auto& iw = *h.iw;
  const auto& g = iw.template view<F>().g;
  Vec<F> X = iw.embed_n(x), U = iw.embed_n(h.xi), TU = iw.theta(U);
  Vec<F> first = g.bracket(g.bracket(X, U), TU);
  Vec<F> second = g.bracket(iw.embed_n(iw.project_n(g.bracket(X, TU))), U);
  Vec<F> out = n_part(iw, Vec<F>(first - second), "(R_ξ + S_ξ²)X");
  out = F(F(1) / 2 / h.xi_norm2) * out;
  if (!Field<F>::is_zero(iw.template view<F>().n.inner(out, h.xi))) throw StructureMismatch("(R_ξ + S_ξ²)X is not tangent");
  return out;
}

template <class F>
Vec<F> ad_mean_curvature_tangent(const HypersurfaceAlgebra<F>& h, const Vec<F>& x) {
  require_tangent(h, x);
  const auto& iw = *h.iw;
  const auto& view = iw.template view<F>();
  Vec<F> y = n_part(iw, view.g.bracket(view.mean_curvature, iw.embed_n(x)), "ad(ℋ)X");
  axpy(y, F(-view.n.inner(y, h.xi) / h.xi_norm2), h.xi);
  return y;
}

template <class F>
Matrix<F> d0_matrix(const HypersurfaceAlgebra<F>& h) {
  const std::size_t m = h.dim();
  Matrix<F> d(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    Vec<F> w = ad_mean_curvature_tangent(h, h.s_basis[j]) - jacobi_plus_shape_sq(h, h.s_basis[j]);
    d.set_column(j, h.s_coordinates(w));
  }
  return d;
}

template <class F>
Matrix<F> D_endomorphism(const HypersurfaceAlgebra<F>& h, const F& c) {
  return d0_matrix(h) + scaled(Matrix<F>::identity(h.dim()), c);
}

template <class F>
F gauss_residual(const HypersurfaceAlgebra<F>& h) {
  Matrix<F> expected = d0_matrix(h) + scaled(Matrix<F>::identity(h.dim()), h.iw->template view<F>().k);
  return max_abs(ricci_operator(h.s_algebra) - expected);
}

template <class F>
DualVerdict<F> evaluate(const HypersurfaceAlgebra<F>& h) {
  DualVerdict<F> out;
  const std::size_t m = h.dim();
  Matrix<F> d0 = d0_matrix(h);
  const F& k = h.iw->template view<F>().k;
  out.gauss_residual = max_abs(ricci_operator(h.s_algebra) - (d0 + scaled(Matrix<F>::identity(m), k)));

  auto fit = fit_identity_shift(h.s_algebra, d0);
  out.formula.residual_sq = fit.residual_sq;
  out.formula.fitted_c = fit.t;
  out.formula.is_soliton = verdict_vanishes(fit.residual_sq);
  if (out.formula.is_soliton) {
    out.formula.c = fit.t;
    out.formula.derivation = d0 + scaled(Matrix<F>::identity(m), fit.t);
  }
  out.oracle = soliton_decide(h.s_algebra);

  std::ostringstream why;
  if (!Field<F>::verdict_zero(out.gauss_residual))
    why << "Ric_s differs from k·id + D0 by " << Field<F>::str(out.gauss_residual) << "; ";
  if (out.formula.is_soliton != out.oracle.is_soliton)
    why << "formula says " << (out.formula.is_soliton ? "soliton" : "not soliton") << ", oracle says "
        << (out.oracle.is_soliton ? "soliton" : "not soliton") << "; ";
  if (out.formula.is_soliton && out.oracle.is_soliton && !fit.bracket_free) {
    F gap = *out.oracle.c - (k - *out.formula.c);
    if (!Field<F>::verdict_zero(gap)) why << "constants disagree by " << Field<F>::str(gap) << "; ";
  }
  out.disagreement = why.str();
  out.paths_agree = out.disagreement.empty();
  return out;
}

template <class F>
SolitonVerdict<F> soliton_decide_formula(const HypersurfaceAlgebra<F>& h) {
  auto v = evaluate(h);
  if (!v.paths_agree)
    throw CrossCheckFailure(h.iw->space_id + " [" + h.spec.text() + "]: " + v.disagreement);
  return v.formula;
}

#define NILSOL_INSTANTIATE(F)                                                                                  \
  template struct HypersurfaceAlgebra<F>;                                                                    \
  template HypersurfaceAlgebra<F> make_hypersurface<F>(std::shared_ptr<const IwasawaPackage>,                \
                                                       const NormalVectorSpec&);                             \
  template Vec<F> shape_operator<F>(const HypersurfaceAlgebra<F>&, const Vec<F>&);                           \
  template Vec<F> jacobi_plus_shape_sq<F>(const HypersurfaceAlgebra<F>&, const Vec<F>&);                     \
  template Vec<F> ad_mean_curvature_tangent<F>(const HypersurfaceAlgebra<F>&, const Vec<F>&);                \
  template Matrix<F> d0_matrix<F>(const HypersurfaceAlgebra<F>&);                                            \
  template Matrix<F> D_endomorphism<F>(const HypersurfaceAlgebra<F>&, const F&);                             \
  template F gauss_residual<F>(const HypersurfaceAlgebra<F>&);                                               \
  template DualVerdict<F> evaluate<F>(const HypersurfaceAlgebra<F>&);                                        \
  template SolitonVerdict<F> soliton_decide_formula<F>(const HypersurfaceAlgebra<F>&);

NILSOL_INSTANTIATE(Rational)
NILSOL_INSTANTIATE(Real)

#undef NILSOL_INSTANTIATE

}  // namespace nilsol
