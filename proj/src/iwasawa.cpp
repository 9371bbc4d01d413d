#include "nilsol/iwasawa.hpp"

#include "nilsol/errors.hpp"

namespace nilsol {

namespace {

template <class F>
IwasawaView<F> make_view(const IwasawaPackage& iw, const Rational& k) {
  IwasawaView<F> v;
  if constexpr (is_exact_v<F>) {
    v.g = iw.g_adapted;
    v.n = iw.n_algebra;
  } else {
    v.g = convert_algebra<F>(iw.g_adapted);
    v.n = convert_algebra<F>(iw.n_algebra);
  }
  const std::size_t r = iw.dim_a;
  Vec<F> hsum(iw.dim_g);
  for (std::size_t idx = 0; idx < iw.roots().size(); ++idx) {
    Vec<F> h(iw.dim_g);
    for (std::size_t j = 0; j < r; ++j) h[iw.a_offset() + j] = F(iw.decomposition.h_coordinates[idx][j]);
    axpy(hsum, F(iw.roots().multiplicity(idx)), h);
    v.h_vectors.push_back(std::move(h));
  }
  v.mean_curvature = std::move(hsum);
  v.k = F(k);
  return v;
}

}  // namespace

std::shared_ptr<const IwasawaPackage> build_iwasawa(const CartanPackage& pkg, std::string space_id) {
  auto iw = std::make_shared<IwasawaPackage>();
  iw->space_id = std::move(space_id);
  iw->source = pkg;
  iw->decomposition = restricted_decomposition(pkg);
  const auto& dec = iw->decomposition;
  const std::size_t n = pkg.g.dim();

  std::vector<Vec<Rational>>& basis = iw->adapted_basis;
  for (std::size_t idx = 0; idx < dec.roots.size(); ++idx) {
    std::size_t begin = basis.size();
    for (const auto& v : dec.positive_spaces[idx]) {
      basis.push_back(v);
      iw->root_of.push_back(idx);
    }
    iw->root_ranges.emplace_back(begin, basis.size());
  }
  iw->dim_n = basis.size();
  for (const auto& v : dec.a_basis) basis.push_back(v);
  iw->dim_a = dec.a_basis.size();
  for (const auto& v : dec.k0_basis) basis.push_back(v);
  iw->dim_k0 = dec.k0_basis.size();
  for (std::size_t idx = 0; idx < dec.roots.size(); ++idx)
    for (const auto& v : dec.negative_spaces[idx]) basis.push_back(v);
  iw->dim_g = basis.size();
  if (iw->dim_g != n) throw StructureMismatch("adapted basis has the wrong size");

  Matrix<Rational> p = Matrix<Rational>::from_columns(basis, n);
  auto pinv = inverse(p);
  if (!pinv) throw StructureMismatch("adapted basis is not a basis");

  std::vector<StructureConstant<Rational>> cs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec<Rational> c = (*pinv) * pkg.g.bracket(basis[i], basis[j]);
      for (std::size_t k = 0; k < n; ++k)
        if (!c[k].is_zero()) cs.push_back({i, j, k, c[k]});
    }
  Matrix<Rational> gram(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      gram(i, j) = pkg.g.inner(basis[i], basis[j]);
      gram(j, i) = gram(i, j);
    }
  iw->g_adapted = MetricLieAlgebra<Rational>(n, cs, gram);
  // coordinate projections onto 𝔫, 𝔞, 𝔨₀, θ𝔫 are orthogonal ones
  auto block = [&](std::size_t i) {
    return i < iw->dim_n ? 0 : i < iw->dim_n + iw->dim_a ? 1 : i < iw->dim_n + iw->dim_a + iw->dim_k0 ? 2 : 3;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (block(i) != block(j) && !gram(i, j).is_zero()) throw StructureMismatch("adapted blocks are not B_θ-orthogonal");

  iw->theta_image.resize(n);
  iw->theta_sign.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec<Rational> t = (*pinv) * (pkg.theta * basis[i]);
    std::optional<std::size_t> hit;
    for (std::size_t k = 0; k < n; ++k) {
      if (t[k].is_zero()) continue;
      if (hit || (t[k] != 1 && t[k] != -1)) throw StructureMismatch("θ is not a signed permutation of the adapted basis");
      hit = k;
    }
    if (!hit) throw StructureMismatch("θ kills a basis vector");
    iw->theta_image[i] = *hit;
    iw->theta_sign[i] = t[*hit] > 0 ? 1 : -1;
  }

  // 𝔫 and 𝔞 ⊕ 𝔫 with the metric ⟨·,·⟩_𝔞 + ½⟨·,·⟩_𝔫
  const std::size_t dn = iw->dim_n;
  const std::size_t r = iw->dim_a;
  std::vector<StructureConstant<Rational>> ncs;
  std::vector<StructureConstant<Rational>> ancs;
  auto an_index = [&](std::size_t g_index) { return g_index < dn ? r + g_index : g_index - dn; };
  for (const auto& c : iw->g_adapted.constants()) {
    bool in_an_ij = c.i < dn + r && c.j < dn + r;
    if (!in_an_ij) continue;
    if (c.k >= dn + r) throw StructureMismatch("𝔞 ⊕ 𝔫 is not closed");
    if (c.i < dn && c.j < dn) {
      if (c.k >= dn) throw StructureMismatch("𝔫 is not closed");
      ncs.push_back(c);
    }
    ancs.push_back({an_index(c.i), an_index(c.j), an_index(c.k), c.value});
  }
  Matrix<Rational> ngram(dn, dn);
  for (std::size_t i = 0; i < dn; ++i)
    for (std::size_t j = 0; j < dn; ++j) ngram(i, j) = gram(i, j) / 2;
  iw->n_algebra = MetricLieAlgebra<Rational>(dn, ncs, ngram);
  Matrix<Rational> angram(dn + r, dn + r);
  for (std::size_t i = 0; i < dn + r; ++i)
    for (std::size_t j = 0; j < dn + r; ++j) {
      Rational v = gram(i, j);
      if (i < dn && j < dn) v /= 2;
      else if ((i < dn) != (j < dn) && !v.is_zero()) throw StructureMismatch("𝔞 is not orthogonal to 𝔫");
      angram(an_index(i), an_index(j)) = v;
    }
  iw->an_algebra = MetricLieAlgebra<Rational>(dn + r, ancs, angram);

  iw->exact = make_view<Rational>(*iw, Rational(0));
  auto structure = ricci_N_structure(*iw);
  if (!structure.residual.is_zero()) throw StructureMismatch("Ric^N − ad(ℋ) is not a multiple of the identity");
  if (structure.k >= 0) throw StructureMismatch("Einstein constant of AN is not negative");
  iw->exact.k = structure.k;
  iw->approx = make_view<Real>(*iw, structure.k);
  return iw;
}

std::shared_ptr<const IwasawaPackage> build_iwasawa(const std::string& space_id) {
  return build_iwasawa(build_realization(descriptor_for(space_id)), space_id);
}

Rational killing_inner(const IwasawaPackage& iw, const std::vector<int>& mu, const std::vector<int>& nu) {
  const auto& dec = iw.decomposition;
  const auto& roots = dec.roots;
  Rational s = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu[i] == 0) continue;
    const auto& fi = dec.functionals[roots.simple_index(i)];
    for (std::size_t j = 0; j < nu.size(); ++j) {
      if (nu[j] == 0) continue;
      const auto& hj = dec.h_coordinates[roots.simple_index(j)];
      Rational b = 0;
      for (std::size_t a = 0; a < fi.size(); ++a) b += fi[a] * hj[a];
      s += Rational(mu[i] * nu[j]) * b;
    }
  }
  return s;
}

Rational an_connection_check(const IwasawaPackage& iw) {
  const std::size_t dn = iw.dim_n;
  const std::size_t r = iw.dim_a;
  const std::size_t m = dn + r;
  auto conn = levi_civita(iw.an_algebra);
  const auto& angram = iw.an_algebra.gram();
  const auto& g = iw.g_adapted;
  // AN basis index → adapted g basis vector
  auto gvec = [&](std::size_t a) {
    return basis_vector<Rational>(iw.dim_g, a < r ? dn + a : a - r);
  };
  Rational worst = 0;
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      Vec<Rational> X = gvec(x), Y = gvec(y);
      Vec<Rational> w = g.bracket(X, Y) + g.bracket(iw.theta(X), Y) - g.bracket(X, iw.theta(Y));
      for (std::size_t z = 0; z < m; ++z) {
        Rational lhs = 0;
        for (std::size_t k = 0; k < m; ++k)
          if (!conn(x, y, k).is_zero()) lhs += conn(x, y, k) * angram(k, z);
        Rational rhs = g.inner(w, gvec(z)) / 4;
        worst = std::max(worst, Rational(mp::abs(lhs - rhs)));
      }
    }
  return worst;
}

MeanCurvatureCheck mean_curvature_vector(const IwasawaPackage& iw) {
  const std::size_t r = iw.dim_a;
  const std::size_t dn = iw.dim_n;
  MeanCurvatureCheck out;
  out.h.assign(r, Rational(0));
  for (std::size_t idx = 0; idx < iw.roots().size(); ++idx)
    axpy(out.h, Rational(iw.roots().multiplicity(idx)), iw.decomposition.h_coordinates[idx]);
  // trace of the second fundamental form (∇̄_X Y)_𝔞 over 𝔫
  auto conn = levi_civita(iw.an_algebra);
  Matrix<Rational> ngram(dn, dn);
  for (std::size_t i = 0; i < dn; ++i)
    for (std::size_t j = 0; j < dn; ++j) ngram(i, j) = iw.an_algebra.gram()(r + i, r + j);
  auto ginv = *inverse(ngram);
  Vec<Rational> tr(r);
  for (std::size_t i = 0; i < dn; ++i)
    for (std::size_t j = 0; j < dn; ++j) {
      if (ginv(i, j).is_zero()) continue;
      for (std::size_t a = 0; a < r; ++a) tr[a] += ginv(i, j) * conn(r + i, r + j, a);
    }
  out.trace_residual = max_abs(tr - out.h);
  return out;
}

RicciNStructure ricci_N_structure(const IwasawaPackage& iw) {
  const std::size_t dn = iw.dim_n;
  Matrix<Rational> ric = ricci_operator(iw.n_algebra);
  const auto& hv = iw.exact.mean_curvature;
  Matrix<Rational> rem = ric;
  for (std::size_t j = 0; j < dn; ++j) {
    Vec<Rational> col = iw.g_adapted.bracket(hv, basis_vector<Rational>(iw.dim_g, j));
    for (std::size_t i = 0; i < iw.dim_g; ++i) {
      if (i < dn) rem(i, j) -= col[i];
      else if (!col[i].is_zero()) throw StructureMismatch("ad(ℋ) does not preserve 𝔫");
    }
  }
  RicciNStructure out;
  out.k = dn ? rem(0, 0) : Rational(0);
  out.residual = max_abs(rem - scaled(Matrix<Rational>::identity(dn), out.k));
  return out;
}

}  // namespace nilsol
