#include "nilsol/geometry.hpp"

#include <doctest.h>

using namespace nilsol;

namespace {

using Q = Rational;

// Ricci of a nilpotent metric Lie algebra with orthonormal basis, written out by hand:
// Ric = −½ Σ ad_{e_i}^T ad_{e_i} + ¼ Σ ad_{e_i} ad_{e_i}^T.
Matrix<Q> nilpotent_ricci_oracle(const MetricLieAlgebra<Q>& alg) {
  const std::size_t n = alg.dim();
  Matrix<Q> ric(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Matrix<Q> ad(n, n);
    for (std::size_t j = 0; j < n; ++j) ad.set_column(j, alg.bracket(basis_vector<Q>(n, i), basis_vector<Q>(n, j)));
    ric = ric - scaled(ad.transpose() * ad, Q(1, 2)) + scaled(ad * ad.transpose(), Q(1, 4));
  }
  return ric;
}

}  // namespace

TEST_CASE("Heisenberg benchmark") {
  auto h = heisenberg_algebra<Q>();
  auto ric = ricci_operator(h);
  Matrix<Q> expected(3, 3);
  expected(0, 0) = Q(-1, 2), expected(1, 1) = Q(-1, 2), expected(2, 2) = Q(1, 2);
  CHECK(ric == expected);
  CHECK(ric == nilpotent_ricci_oracle(h));

  auto v = soliton_decide(h);
  REQUIRE(v.is_soliton);
  CHECK(*v.c == Q(-3, 2));
  REQUIRE(v.derivation);
  Matrix<Q> d(3, 3);
  d(0, 0) = 1, d(1, 1) = 1, d(2, 2) = 2;
  CHECK(*v.derivation == d);
  CHECK(v.residual_sq == 0);
  CHECK_FALSE(einstein_check(h).has_value());
}

TEST_CASE("Levi-Civita connection is torsion free and metric") {
  auto h = heisenberg_algebra<Q>();
  Matrix<Q> g(3, 3);
  g(0, 0) = 2, g(0, 1) = 1, g(1, 0) = 1, g(1, 1) = 3, g(2, 2) = 5;
  auto hg = h.with_gram(g);
  auto conn = levi_civita(hg);
  CHECK(torsion_residual(hg, conn) == 0);
  CHECK(metric_residual(hg, conn) == 0);
  // ∇_{e0} e1 = ½ [e0, e1] for the orthonormal Heisenberg metric
  auto c = levi_civita(h);
  CHECK(c.covariant(basis_vector<Q>(3, 0), basis_vector<Q>(3, 1)) == Vec<Q>{0, 0, Q(1, 2)});
}

TEST_CASE("Ricci form is symmetric and coordinate independent") {
  auto h = heisenberg_algebra<Q>();
  Matrix<Q> g(3, 3);
  g(0, 0) = 2, g(0, 1) = 1, g(1, 0) = 1, g(1, 1) = 3, g(2, 2) = 5;
  auto rf = ricci_form(h.with_gram(g));
  CHECK(rf == rf.transpose());
}

TEST_CASE("abelian algebras are flat, Einstein with constant zero") {
  auto a = abelian_algebra<Q>(4);
  CHECK(max_abs(ricci_operator(a)) == 0);
  CHECK(einstein_check(a) == Q(0));
  auto v = soliton_decide(a);
  CHECK(v.is_soliton);
  CHECK(*v.c == 0);
}

TEST_CASE("scaling the metric scales c inversely") {
  auto h = heisenberg_algebra<Q>();
  for (Q t : {Q(2), Q(1, 3)}) {
    auto v = soliton_decide(h.with_gram(scaled(h.gram(), t)));
    REQUIRE(v.is_soliton);
    CHECK(*v.c == Q(-3, 2) / t);
  }
}

TEST_CASE("a non-soliton nilpotent algebra") {
  // 𝔫 of sl4(ℝ) with a tilted metric is not a nilsoliton; a smaller classical example:
  // the filiform algebra [e0,e1]=e2, [e0,e2]=e3 with a skewed Gram.
  std::vector<StructureConstant<Q>> cs{{0, 1, 2, Q(1)}, {0, 2, 3, Q(1)}};
  Matrix<Q> g = Matrix<Q>::identity(4);
  g(1, 2) = g(2, 1) = Q(1, 2);
  MetricLieAlgebra<Q> f(4, cs, g);
  auto v = soliton_decide(f);
  CHECK_FALSE(v.is_soliton);
  CHECK(v.residual_sq > 0);
  // orthonormal filiform is a nilsoliton
  CHECK(soliton_decide(MetricLieAlgebra<Q>(4, cs, Matrix<Q>::identity(4))).is_soliton);
}

TEST_CASE("floating two-term formula matches the Koszul Ricci") {
  auto h = convert_algebra<Real>(heisenberg_algebra<Q>());
  CHECK(max_abs(nilpotent_ricci_two_term(h) - ricci_operator(h)) < Real(1e-30));
  auto v = soliton_decide(h);
  REQUIRE(v.is_soliton);
  CHECK(mp::abs(*v.c + Real(1.5)) < Real(1e-30));
}

TEST_CASE("identity shift fit") {
  auto h = heisenberg_algebra<Q>();
  Matrix<Q> base(3, 3);
  base(0, 0) = 2, base(1, 1) = 2, base(2, 2) = 3;  // diag(1,1,2) + 1·id
  auto fit = fit_identity_shift(h, base);
  CHECK(fit.t == -1);
  CHECK(fit.residual_sq == 0);
  CHECK_FALSE(fit.bracket_free);
}
