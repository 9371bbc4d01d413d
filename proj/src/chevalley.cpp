#include "nilsol/errors.hpp"
#include "nilsol/realization.hpp"

namespace nilsol {

namespace detail {
Matrix<Rational> btheta_from(const Matrix<Rational>& killing, const Matrix<Rational>& theta);
void validate_cartan_package(CartanPackage& pkg);
}  // namespace detail

namespace {

std::vector<int> neg(std::vector<int> v) {
  for (auto& x : v) x = -x;
  return v;
}

std::vector<int> add(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
  return s;
}

bool is_zero_coords(const std::vector<int>& v) {
  for (int x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace

ChevalleyConstants::ChevalleyConstants(const RootSystemData& roots) : roots_(roots) {
  if (!roots.reduced()) throw UnsupportedSystem("Chevalley basis needs a reduced root system");
}

Rational ChevalleyConstants::len2(const std::vector<int>& r) const { return roots_.inner(r, r); }

bool ChevalleyConstants::positive(const std::vector<int>& r) const {
  for (int x : r)
    if (x != 0) return x > 0;
  return false;
}

std::size_t ChevalleyConstants::order_index(const std::vector<int>& r) const { return *roots_.find(r); }

int ChevalleyConstants::operator()(const std::vector<int>& r, const std::vector<int>& s) const {
  std::vector<int> sum = add(r, s);
  if (is_zero_coords(sum) || !is_root(sum)) return 0;
  auto key = std::make_pair(r, s);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  Rational value;
  const bool rp = positive(r);
  const bool sp = positive(s);
  if (rp && sp) {
    // extraspecial pair of ξ = r + s: first α in the total order with ξ − α positive
    std::vector<int> alpha, beta;
    for (const auto& cand : roots_.positive_roots()) {
      std::vector<int> rest = sum;
      for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= cand.coords[i];
      if (roots_.find(rest)) {
        alpha = cand.coords;
        beta = rest;
        break;
      }
    }
    if (r == alpha) {
      int p = 0;
      std::vector<int> down = s;
      while (true) {
        for (std::size_t i = 0; i < down.size(); ++i) down[i] -= alpha[i];
        if (is_zero_coords(down) || !is_root(down)) break;
        ++p;
      }
      value = p + 1;
    } else if (s == alpha || order_index(r) > order_index(s)) {
      value = -(*this)(s, r);
    } else {
      // r+s+(−α)+(−β) = 0 relation
      Rational xi2 = len2(sum);
      Rational total = 0;
      std::vector<int> s_minus_a = add(s, neg(alpha));
      if (!is_zero_coords(s_minus_a) && is_root(s_minus_a))
        total += Rational((*this)(s, neg(alpha)) * (*this)(r, neg(beta))) / len2(s_minus_a);
      std::vector<int> r_minus_a = add(r, neg(alpha));
      if (!is_zero_coords(r_minus_a) && is_root(r_minus_a))
        total += Rational((*this)(neg(alpha), r) * (*this)(s, neg(beta))) / len2(r_minus_a);
      value = xi2 * total / Rational((*this)(alpha, beta));
    }
  } else if (!rp && !sp) {
    value = -(*this)(neg(r), neg(s));
  } else {
    // r + s + t = 0:  N_{r,s}/|t|² = N_{s,t}/|r|² = N_{t,r}/|s|²
    std::vector<int> t = neg(sum);
    const bool tp = positive(t);
    if (rp) {
      value = tp ? len2(t) / len2(s) * (*this)(t, r) : len2(t) / len2(r) * (*this)(s, t);
    } else {
      value = tp ? len2(t) / len2(r) * (*this)(s, t) : len2(t) / len2(s) * (*this)(t, r);
    }
  }
  if (mp::denominator(value) != 1) throw ConstructionError("non-integral Chevalley constant");
  int out = static_cast<int>(mp::numerator(value));
  memo_.emplace(key, out);
  return out;
}

CartanPackage build_split_realization(const SimpleSystem& simple) {
  if (simple.kind == RootKind::BC) throw UnsupportedRealForm("split real forms have reduced root systems");
  RootSystemData roots = build_root_system(simple);
  ChevalleyConstants nc(roots);
  const std::size_t r = static_cast<std::size_t>(simple.rank);
  const std::size_t P = roots.size();
  const std::size_t n = r + 2 * P;
  auto e = [&](std::size_t k) { return r + k; };
  auto f = [&](std::size_t k) { return r + P + k; };
  auto cartan_with = [&](std::size_t i, const std::vector<int>& lam) {
    int a = 0;
    for (std::size_t j = 0; j < r; ++j) a += lam[j] * simple.cartan[i][j];
    return a;
  };

  std::vector<StructureConstant<Rational>> cs;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < P; ++k) {
      int a = cartan_with(i, roots.root(k).coords);
      if (a == 0) continue;
      cs.push_back({i, e(k), e(k), Rational(a)});
      cs.push_back({i, f(k), f(k), Rational(-a)});
    }
  for (std::size_t k = 0; k < P; ++k) {
    const auto& lam = roots.root(k);
    // coroot: h_λ = Σ_j λ_j |α_j|²/|λ|² h_j
    for (std::size_t j = 0; j < r; ++j) {
      if (lam.coords[j] == 0) continue;
      Rational c = Rational(lam.coords[j]) * simple.squared_lengths[j] / lam.squared_length;
      cs.push_back({e(k), f(k), j, c});
    }
    for (std::size_t l = k + 1; l < P; ++l) {
      const auto& mu = roots.root(l);
      if (auto m = roots.find(add(lam.coords, mu.coords))) {
        cs.push_back({e(k), e(l), e(*m), Rational(nc(lam.coords, mu.coords))});
        cs.push_back({f(k), f(l), f(*m), Rational(nc(neg(lam.coords), neg(mu.coords)))});
      }
    }
    for (std::size_t l = 0; l < P; ++l) {
      if (l == k) continue;
      const auto& mu = roots.root(l);
      std::vector<int> diff = add(lam.coords, neg(mu.coords));
      int value = nc(lam.coords, neg(mu.coords));
      if (value == 0) continue;
      if (auto m = roots.find(diff)) {
        cs.push_back({e(k), f(l), e(*m), Rational(value)});
      } else if (auto m2 = roots.find(neg(diff))) {
        cs.push_back({e(k), f(l), f(*m2), Rational(value)});
      }
    }
  }

  MetricLieAlgebra<Rational> raw(n, cs, Matrix<Rational>::identity(n));
  if (!raw.jacobi_residual().is_zero())
    throw ConstructionError("Chevalley signs violate the Jacobi identity for " + simple.label());

  Matrix<Rational> theta(n, n);
  for (std::size_t i = 0; i < r; ++i) theta(i, i) = -1;
  for (std::size_t k = 0; k < P; ++k) {
    theta(f(k), e(k)) = -1;
    theta(e(k), f(k)) = -1;
  }
  CartanPackage pkg;
  pkg.descriptor.family = RealFormFamily::split_from_rootsystem;
  pkg.descriptor.simple = simple;
  pkg.killing = killing_form(raw);
  pkg.theta = theta;
  pkg.g = MetricLieAlgebra<Rational>(n, cs, detail::btheta_from(pkg.killing, theta));
  for (std::size_t i = 0; i < r; ++i) pkg.a_basis.push_back(basis_vector<Rational>(n, i));
  detail::validate_cartan_package(pkg);
  return pkg;
}

}  // namespace nilsol
