#include "nilsol/errors.hpp"
#include "nilsol/realization.hpp"

#include <algorithm>
#include <numeric>

namespace nilsol {

namespace {

Vec<Rational> primitive(Vec<Rational> v) {
  Integer l = 1;
  for (const auto& x : v)
    if (!x.is_zero()) l = mp::lcm(l, Integer(mp::denominator(x)));
  Integer g = 0;
  for (const auto& x : v)
    if (!x.is_zero()) g = mp::gcd(g, Integer(mp::numerator(x) * (l / mp::denominator(x))));
  if (g == 0) return v;
  Rational s(l, g);
  for (auto& x : v) x *= s;
  return v;
}

struct Eigenspace {
  std::vector<Vec<Rational>> basis;
  Vec<Rational> label;
};

// Splits an ad(H)-invariant subspace into integer eigenspaces.
std::vector<Eigenspace> split(const Eigenspace& space, const Matrix<Rational>& ad) {
  const std::size_t d = space.basis.size();
  SpanCoordinates<Rational> coords(space.basis);
  Matrix<Rational> rest(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    auto c = coords.coordinates(ad * space.basis[j]);
    if (!c) throw NumericalDegeneracy("subspace is not ad(𝔞)-invariant");
    rest.set_column(j, *c);
  }
  Rational bound = 0;
  for (std::size_t i = 0; i < d; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < d; ++j) s += mp::abs(rest(i, j));
    bound = std::max(bound, s);
  }
  long b = Integer(mp::numerator(bound) / mp::denominator(bound)).convert_to<long>();
  std::vector<Eigenspace> out;
  std::size_t found = 0;
  for (long mu = -b; mu <= b && found < d; ++mu) {
    Matrix<Rational> shifted = rest;
    for (std::size_t i = 0; i < d; ++i) shifted(i, i) -= mu;
    auto null = nullspace(shifted);
    if (null.empty()) continue;
    Eigenspace e;
    e.label = space.label;
    e.label.push_back(Rational(mu));
    for (const auto& c : null) {
      Vec<Rational> v(space.basis.front().size());
      for (std::size_t k = 0; k < d; ++k) axpy(v, c[k], space.basis[k]);
      e.basis.push_back(std::move(v));
    }
    found += null.size();
    out.push_back(std::move(e));
  }
  if (found != d) throw NumericalDegeneracy("ad(H) has non-integral or non-semisimple spectrum");
  return out;
}

bool lex_positive(const Vec<Rational>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return x > 0;
  return false;
}

bool all_zero(const Vec<Rational>& v) { return !lex_positive(v) && !lex_positive(Rational(-1) * v); }

}  // namespace

RestrictedDecomposition restricted_decomposition(const CartanPackage& pkg) {
  const std::size_t n = pkg.g.dim();
  const std::size_t r = pkg.a_basis.size();
  const Matrix<Rational>& gram = pkg.g.gram();

  std::vector<Eigenspace> spaces(1);
  for (std::size_t i = 0; i < n; ++i) spaces[0].basis.push_back(basis_vector<Rational>(n, i));
  for (std::size_t a = 0; a < r; ++a) {
    Matrix<Rational> ad = ad_matrix(pkg.g, pkg.a_basis[a]);
    std::vector<Eigenspace> next;
    for (const auto& s : spaces)
      for (auto& piece : split(s, ad)) next.push_back(std::move(piece));
    spaces = std::move(next);
  }

  std::vector<const Eigenspace*> pos;
  const Eigenspace* zero = nullptr;
  std::map<Vec<Rational>, const Eigenspace*> by_label;
  for (const auto& s : spaces) {
    by_label[s.label] = &s;
    if (all_zero(s.label)) zero = &s;
    else if (lex_positive(s.label)) pos.push_back(&s);
  }
  if (!zero) throw StructureMismatch("no zero weight space");

  auto is_positive_label = [&](const Vec<Rational>& v) {
    auto it = by_label.find(v);
    return it != by_label.end() && lex_positive(v);
  };
  std::vector<const Eigenspace*> simple;
  for (const auto* p : pos) {
    bool decomposable = false;
    for (const auto* q : pos) {
      if (q == p) continue;
      Vec<Rational> rest = p->label - q->label;
      if (is_positive_label(rest)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) simple.push_back(p);
  }
  if (simple.size() != r) throw StructureMismatch("simple root count differs from dim 𝔞");

  // B on 𝔞 and inner products of functionals: <λ,μ> = λ^T K^{-1} μ
  Matrix<Rational> ka(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) ka(i, j) = inner(pkg.killing, pkg.a_basis[i], pkg.a_basis[j]);
  auto kinv = inverse(ka);
  if (!kinv) throw StructureMismatch("Killing form degenerate on 𝔞");
  auto pairing = [&](const Vec<Rational>& x, const Vec<Rational>& y) { return dot(x, (*kinv) * y); };

  // simple-root coordinates (original order)
  Matrix<Rational> smat(r, r);
  for (std::size_t j = 0; j < r; ++j) smat.set_column(j, simple[j]->label);
  auto sinv = inverse(smat);
  if (!sinv) throw StructureMismatch("simple roots are not a basis of 𝔞*");
  auto coords_of = [&](const Vec<Rational>& label) {
    Vec<Rational> c = (*sinv) * label;
    std::vector<int> out;
    for (const auto& x : c) {
      if (mp::denominator(x) != 1 || x < 0) throw StructureMismatch("root with non-integral simple coordinates");
      out.push_back(static_cast<int>(mp::numerator(x)));
    }
    return out;
  };

  std::vector<std::vector<int>> cartan(r, std::vector<int>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      Rational a = 2 * pairing(simple[i]->label, simple[j]->label) / pairing(simple[i]->label, simple[i]->label);
      if (mp::denominator(a) != 1) throw StructureMismatch("non-integral Cartan integer");
      cartan[i][j] = static_cast<int>(mp::numerator(a));
    }
  bool doubled = false;
  for (const auto* s : simple)
    if (by_label.count(Rational(2) * s->label)) doubled = true;

  std::vector<RootKind> kinds;
  if (doubled) {
    kinds = {RootKind::BC};
  } else {
    kinds = {RootKind::A, RootKind::B, RootKind::C, RootKind::D, RootKind::G2, RootKind::F4};
  }
  std::optional<SimpleSystem> canon;
  std::vector<std::size_t> perm(r);
  for (RootKind kind : kinds) {
    if (kind == RootKind::C && r < 3) continue;
    SimpleSystem cand;
    try {
      cand = SimpleSystem::make(kind, static_cast<int>(r));
    } catch (const UnsupportedSystem&) {
      continue;
    }
    std::iota(perm.begin(), perm.end(), 0);
    do {
      bool match = true;
      for (std::size_t i = 0; i < r && match; ++i)
        for (std::size_t j = 0; j < r; ++j)
          if (cartan[perm[i]][perm[j]] != cand.cartan[i][j]) {
            match = false;
            break;
          }
      if (match) {
        canon = cand;
        break;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (canon) break;
  }
  if (!canon) throw StructureMismatch("restricted root system of unsupported type");
  for (std::size_t i = 0; i < r; ++i) canon->squared_lengths[i] = pairing(simple[perm[i]]->label, simple[perm[i]]->label);
  canon->validate();

  RootSystemData abstract = build_root_system(*canon);
  std::size_t root_count = 0;
  for (const auto* p : pos) (void)p, ++root_count;
  if (abstract.size() != root_count) throw StructureMismatch("restricted roots do not form the identified system");

  RestrictedDecomposition out;
  out.a_basis = pkg.a_basis;
  out.killing_on_a = ka;
  out.functionals.resize(abstract.size());
  out.positive_spaces.resize(abstract.size());
  out.negative_spaces.resize(abstract.size());
  out.h_coordinates.resize(abstract.size());
  std::vector<int> mult(abstract.size());
  std::size_t total = zero->basis.size();
  for (const auto* p : pos) {
    std::vector<int> old = coords_of(p->label);
    std::vector<int> c(r);
    for (std::size_t i = 0; i < r; ++i) c[i] = old[perm[i]];
    auto idx = abstract.find(c);
    if (!idx) throw StructureMismatch("restricted root missing from the identified system");
    out.functionals[*idx] = p->label;
    out.h_coordinates[*idx] = (*kinv) * p->label;
    std::vector<Vec<Rational>> basis;
    for (auto& v : gram_schmidt(p->basis, gram)) basis.push_back(primitive(std::move(v)));
    mult[*idx] = static_cast<int>(basis.size());
    total += 2 * basis.size();
    std::vector<Vec<Rational>> negs;
    for (const auto& v : basis) negs.push_back(pkg.theta * v);
    auto it = by_label.find(Rational(-1) * p->label);
    if (it == by_label.end() || it->second->basis.size() != basis.size())
      throw StructureMismatch("θ does not map g_λ onto g_{−λ}");
    out.positive_spaces[*idx] = std::move(basis);
    out.negative_spaces[*idx] = std::move(negs);
  }
  if (total != n) throw StructureMismatch("root space dimensions do not add up to dim 𝔤");
  abstract.set_multiplicities(mult);
  out.roots = std::move(abstract);

  // 𝔨₀ = g₀ ⊖ 𝔞
  const auto& z = zero->basis;
  Matrix<Rational> cons(r, z.size());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < z.size(); ++k) cons(i, k) = inner(gram, pkg.a_basis[i], z[k]);
  std::vector<Vec<Rational>> k0;
  for (const auto& c : nullspace(cons)) {
    Vec<Rational> v(n);
    for (std::size_t k = 0; k < z.size(); ++k) axpy(v, c[k], z[k]);
    k0.push_back(std::move(v));
  }
  for (auto& v : gram_schmidt(k0, gram)) out.k0_basis.push_back(primitive(std::move(v)));
  if (out.k0_basis.size() + r != z.size()) throw StructureMismatch("g₀ ≠ 𝔞 ⊕ 𝔨₀");
  return out;
}

}  // namespace nilsol
