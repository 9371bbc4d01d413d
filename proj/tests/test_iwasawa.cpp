#include "nilsol/errors.hpp"
#include "nilsol/iwasawa.hpp"

#include <doctest.h>

using namespace nilsol;

namespace {

using Q = Rational;

Q root_length(const IwasawaPackage& iw, std::size_t simple) {
  const auto& c = iw.roots().root(iw.roots().simple_index(simple)).coords;
  return killing_inner(iw, c, c);
}

}  // namespace

TEST_CASE("Killing lengths of simple roots") {
  // |λ|² = λ(H_λ) with H_λ dual to λ under the Killing form of 𝔤
  auto sl4r = build_iwasawa("sl4r");
  for (std::size_t i = 0; i < 3; ++i) CHECK(root_length(*sl4r, i) == Q(1, 4));
  auto so23 = build_iwasawa("so23");
  CHECK(root_length(*so23, 1) == Q(1, 6));
  CHECK(root_length(*so23, 0) == Q(1, 3));
  auto so25 = build_iwasawa("so25");
  CHECK(root_length(*so25, 1) == Q(1, 10));
  CHECK(root_length(*so25, 0) == Q(1, 5));
  // sl2(ℝ): B(H,H) = 8 for H = diag(1,−1), α(H) = 2, so |α|² = 4/8
  auto sl2 = build_iwasawa("sl2r");
  CHECK(root_length(*sl2, 0) == Q(1, 2));
}

TEST_CASE("decomposition stores Killing-normalized lengths") {
  for (const char* id : {"sl3c", "so26", "su23", "split:G2"}) {
    CAPTURE(id);
    auto iw = build_iwasawa(id);
    for (std::size_t i = 0; i < iw->roots().size(); ++i) {
      const auto& c = iw->roots().root(i).coords;
      CHECK(iw->roots().root(i).squared_length == killing_inner(*iw, c, c));
    }
  }
}

TEST_CASE("AN is Einstein with k = -1/2 and N is a nilsoliton") {
  for (const auto& id : catalog_space_ids()) {
    CAPTURE(id);
    auto iw = build_iwasawa(id);
    CHECK(iw->exact.k == Q(-1, 2));
    CHECK(einstein_check(iw->an_algebra) == iw->exact.k);
    auto st = ricci_N_structure(*iw);
    CHECK(st.residual == 0);
    CHECK(st.k == iw->exact.k);
    CHECK(soliton_decide(iw->n_algebra).is_soliton);
    CHECK(an_connection_check(*iw) == 0);
    CHECK(mean_curvature_vector(*iw).trace_residual == 0);
    for (std::size_t i = 0; i < static_cast<std::size_t>(iw->roots().rank()); ++i) {
      auto [lhs, rhs] = sum_strings_identity(iw->roots().root(iw->roots().simple_index(i)), iw->roots());
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("adapted basis blocks") {
  auto iw = build_iwasawa("sl3h");
  CHECK(iw->dim_n == 12);
  CHECK(iw->dim_a == 2);
  CHECK(iw->dim_k0 == 9);  // sp(1)³ = su(2)³
  for (std::size_t i = 0; i < iw->dim_g; ++i) {
    auto e = basis_vector<Q>(iw->dim_g, i);
    CHECK(iw->theta(iw->theta(e)) == e);
  }
  // θ maps 𝔫 onto θ𝔫 and fixes 𝔨₀
  for (std::size_t i = 0; i < iw->dim_n; ++i) CHECK(iw->theta_image[i] >= iw->neg_offset());
  for (std::size_t i = iw->k0_offset(); i < iw->neg_offset(); ++i) CHECK(iw->theta_image[i] == i);
  for (std::size_t i = 0; i < iw->dim_n; ++i) {
    auto [b, e] = iw->root_ranges[iw->root_of[i]];
    CHECK(b <= i);
    CHECK(i < e);
  }
}

TEST_CASE("views agree between exact and floating fields") {
  auto iw = build_iwasawa("so5c");
  CHECK(iw->approx.n.dim() == iw->exact.n.dim());
  CHECK(mp::abs(iw->approx.k - Real(iw->exact.k)) < Real(1e-30));
  const auto& hv = iw->exact.mean_curvature;
  const auto& hf = iw->approx.mean_curvature;
  for (std::size_t i = 0; i < hv.size(); ++i) CHECK(mp::abs(hf[i] - Real(hv[i])) < Real(1e-30));
}

TEST_CASE("unknown identifiers") { CHECK_THROWS_AS(build_iwasawa("so99"), UnsupportedRealForm); }
