#include "nilsol/suites.hpp"

#include <doctest.h>

using namespace nilsol;

namespace {

void require_pass(const SuiteReport& r) {
  INFO(r.to_text());
  CHECK(r.passed());
}

}  // namespace

TEST_CASE("lemma suite on so(2,3) and sl(3,C)") {
  for (const char* id : {"so23", "sl3c"}) {
    auto iw = build_iwasawa(id);
    auto r = lemma_suite(iw, 7, 100);
    require_pass(r);
    for (const auto& c : r.checks)
      if (!c.skipped) CHECK(c.samples >= 1);
  }
}

TEST_CASE("bracket lemma (i) runs on sl(3,C)") {
  auto r = lemma_suite(build_iwasawa("sl3c"), 3, 100);
  bool found = false;
  for (const auto& c : r.checks)
    if (c.name.rfind("[[[thetaX, Y], W], X]", 0) == 0) {
      found = true;
      CHECK_FALSE(c.skipped);
      CHECK(c.passed);
      CHECK(c.samples == 100);
    }
  CHECK(found);
}

TEST_CASE("geometry suite") {
  for (const char* id : {"su23", "split:G2"}) require_pass(geometry_suite(build_iwasawa(id)));
}

TEST_CASE("random exact specs admit exact arithmetic") {
  auto iw = build_iwasawa("sl4h");
  std::mt19937_64 rng(5);
  for (int k = 0; k < 10; ++k) {
    auto spec = random_exact_spec(*iw, rng);
    CHECK(exact_mode_available(*iw, spec));
  }
}

TEST_CASE("closed forms in both fields") {
  auto iw = build_iwasawa("sl4c");
  auto spec = NormalVectorSpec::parse("alpha1=s2/2,alpha3=s2/2");
  require_pass(closed_form_suite(make_hypersurface<Rational>(iw, spec)));
  require_pass(closed_form_suite(make_hypersurface<Real>(iw, NormalVectorSpec::parse("alpha1=0.6,alpha2=0.8"))));
  auto so25 = build_iwasawa("so25");
  require_pass(closed_form_suite(make_hypersurface<Real>(so25, NormalVectorSpec::parse("alpha1=s2/2,alpha2=s2/2"))));
}

TEST_CASE("a failing identity is reported, not hidden") {
  SuiteReport r;
  r.checks.push_back({"x", 3, false, false, NumericMode::exact, "1", ""});
  CHECK_FALSE(r.passed());
  CHECK(r.to_text().find("FAIL") != std::string::npos);
  r.checks[0] = {"y", 0, true, false, NumericMode::exact, "0", "n/a"};
  CHECK(r.passed());
}
