#include "nilsol/algebra.hpp"
#include "nilsol/errors.hpp"

#include <doctest.h>

using namespace nilsol;

namespace {

using Q = Rational;

Matrix<Q> diag(std::initializer_list<long> d) {
  Matrix<Q> m(d.size(), d.size());
  std::size_t i = 0;
  for (long x : d) m(i, i) = x, ++i;
  return m;
}

}  // namespace

TEST_CASE("linear algebra kernels") {
  Matrix<Q> a(2, 3);
  a(0, 0) = 1, a(0, 1) = 2, a(0, 2) = 3;
  a(1, 0) = 2, a(1, 1) = 4, a(1, 2) = 6;
  CHECK(rank(a) == 1);
  auto ns = nullspace(a);
  CHECK(ns.size() == 2);
  for (const auto& v : ns) CHECK(is_zero(a * v));

  Matrix<Q> b(2, 2);
  b(0, 0) = 2, b(0, 1) = 1, b(1, 0) = 1, b(1, 1) = 1;
  auto inv = inverse(b);
  REQUIRE(inv);
  CHECK(b * *inv == Matrix<Q>::identity(2));
  CHECK(is_positive_definite(b));
  b(1, 1) = Q(1, 2);
  CHECK_FALSE(is_positive_definite(b));

  auto og = gram_schmidt<Q>({{1, 1}, {1, 0}, {2, 2}}, Matrix<Q>::identity(2));
  REQUIRE(og.size() == 2);
  CHECK(dot(og[0], og[1]) == 0);
}

TEST_CASE("Heisenberg algebra") {
  auto h = heisenberg_algebra<Q>();
  CHECK(h.dim() == 3);
  CHECK(h.jacobi_residual() == 0);
  CHECK_FALSE(h.is_abelian());
  CHECK(h.bracket(basis_vector<Q>(3, 0), basis_vector<Q>(3, 1)) == basis_vector<Q>(3, 2));
  CHECK(h.bracket(basis_vector<Q>(3, 1), basis_vector<Q>(3, 0)) == Q(-1) * basis_vector<Q>(3, 2));
  CHECK(nilpotency_degree(h) == 2);
  CHECK(lower_central_series(h) == std::vector<std::size_t>{3, 1, 0});
  // nilpotent: Killing form vanishes
  CHECK(max_abs(killing_form(h)) == 0);
}

TEST_CASE("Killing form of sl2 in the basis H, E, F") {
  auto s = sl2_algebra<Q>();
  auto k = killing_form(s);
  // tr(ad H)^2 = 4 + 4, tr(ad E ad F) = 2 + 2
  CHECK(k(0, 0) == 8);
  CHECK(k(1, 2) == 4);
  CHECK(k(1, 1) == 0);
  CHECK_FALSE(nilpotency_degree(s).has_value());
}

TEST_CASE("derivation spaces") {
  // Heisenberg: gl2 on the generators plus two maps into the center
  CHECK(derivation_space(heisenberg_algebra<Q>()).size() == 6);
  CHECK(derivation_space(abelian_algebra<Q>(3)).size() == 9);
  // sl2: all derivations are inner
  CHECK(derivation_space(sl2_algebra<Q>()).size() == 3);
}

TEST_CASE("derivation defect") {
  auto h = heisenberg_algebra<Q>();
  for (const auto& v : derivation_defect(h, diag({1, 1, 2}))) CHECK(is_zero(v));
  bool nonzero = false;
  for (const auto& v : derivation_defect(h, Matrix<Q>::identity(3))) nonzero = nonzero || !is_zero(v);
  CHECK(nonzero);
  CHECK_THROWS_AS(derivation_defect(h, Matrix<Q>::identity(2)), DimensionError);
}

TEST_CASE("subalgebra restriction") {
  auto h = heisenberg_algebra<Q>();
  auto sub = subalgebra_restrict(h, {basis_vector<Q>(3, 0), basis_vector<Q>(3, 2)});
  CHECK(sub.dim() == 2);
  CHECK(sub.is_abelian());
  CHECK_THROWS_AS(subalgebra_restrict(h, {basis_vector<Q>(3, 0), basis_vector<Q>(3, 1)}), NotASubalgebra);
  // induced metric
  Vec<Q> v{1, 0, 1};
  auto sub2 = subalgebra_restrict(h, {v, basis_vector<Q>(3, 2)});
  CHECK(sub2.gram()(0, 0) == 2);
  CHECK(sub2.gram()(0, 1) == 1);
}

TEST_CASE("constructor rejects contradictory constants and bad Gram matrices") {
  std::vector<StructureConstant<Q>> cs{{0, 1, 2, Q(1)}, {1, 0, 2, Q(1)}};
  CHECK_THROWS(MetricLieAlgebra<Q>(3, cs, Matrix<Q>::identity(3)));
  CHECK_THROWS(MetricLieAlgebra<Q>(3, {}, Matrix<Q>(3, 3)));
}

TEST_CASE("text round trip") {
  auto h = heisenberg_algebra<Q>().with_gram(diag({1, 2, 3}));
  auto back = parse_algebra<Q>(dump_algebra(h));
  CHECK(back.dim() == 3);
  CHECK(back.gram() == h.gram());
  CHECK(back.bracket(basis_vector<Q>(3, 0), basis_vector<Q>(3, 1)) == basis_vector<Q>(3, 2));
}

TEST_CASE("floating conversion keeps constants") {
  auto h = convert_algebra<Real>(heisenberg_algebra<Q>());
  CHECK(h.jacobi_residual() == 0);
  CHECK(h.structure_constant(0, 1, 2) == 1);
}
