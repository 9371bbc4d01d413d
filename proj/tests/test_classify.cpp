#include "nilsol/classify.hpp"

#include <doctest.h>
#include <json.hpp>

#include <set>

using namespace nilsol;

namespace {

CatalogEntry find_entry(const std::string& space, const std::string& provenance_prefix, std::size_t phi_size) {
  for (const auto& e : golden_table())
    if (e.space_id == space && e.provenance.rfind(provenance_prefix, 0) == 0 && e.family.phi.size() == phi_size) return e;
  FAIL("entry not found: " << space << " " << provenance_prefix);
  return {};
}

}  // namespace

TEST_CASE("golden table coverage") {
  auto table = golden_table();
  std::set<std::string> items;
  std::size_t negatives = 0, verified = 0, unverified = 0;
  for (const auto& e : table) {
    if (e.expected == Expectation::expected_unverified) {
      ++unverified;
      continue;
    }
    ++verified;
    if (e.provenance.rfind("negative", 0) == 0) ++negatives;
    for (const char* item : {"(i)", "(ii)", "(iii)", "(iv)", "(v)", "(vi)"})
      if (e.provenance.rfind(std::string(item) + " ", 0) == 0 || e.provenance == item) items.insert(item);
  }
  CHECK(verified >= 20);
  CHECK(negatives >= 5);
  CHECK(unverified == 2);
  CHECK(items.size() == 6);
}

TEST_CASE("family expansion") {
  auto so23 = find_entry("so23", "(v)", 2);
  auto specs = expand(so23);
  // 9 grid points, the equal point and 4 exact B2 points
  CHECK(specs.size() == 14);
  for (const auto& s : specs) {
    Rational total = 0;
    for (const auto& c : s.coeffs) total += c.square();
    CHECK(total == 1);
  }
  auto grid = expand(so23, GridConfig{4, 2});
  CHECK(grid.size() == 9);

  auto off = find_entry("sl4r", "(vi) off-special", 2);
  for (const auto& s : expand(off)) CHECK(s.coeffs[0].square() != s.coeffs[1].square());

  CatalogEntry simplex;
  simplex.space_id = "sl5c";
  simplex.family.kind = FamilyKind::full_simplex;
  simplex.family.phi = {0, 1, 2};
  simplex.family.use_grid = true;
  CHECK(expand(simplex).size() == 6);  // compositions of 5 into 3 positive parts
  simplex.family.off_special_only = true;
  CHECK(expand(simplex, GridConfig{9, 3}).size() == 9);  // compositions of 6 into 3, minus (2,2,2)
}

TEST_CASE("theorem predicate") {
  auto check = [](const char* space, const char* spec, Expectation e) {
    CAPTURE(space);
    CAPTURE(spec);
    CHECK(main_theorem_expectation(*iwasawa_for(space), NormalVectorSpec::parse(spec)) == e);
  };
  check("su31", "alpha1=1", Expectation::soliton);
  check("sp21", "alpha1=1", Expectation::soliton);
  check("sp31", "alpha1=1", Expectation::not_soliton);
  check("so41", "alpha1=1", Expectation::soliton);
  check("sl3h", "alpha2=1", Expectation::soliton);
  check("sl3h", "alpha1=0.6,alpha2=0.8", Expectation::not_soliton);
  check("so27", "alpha2=1", Expectation::soliton);
  check("so27", "alpha1=1", Expectation::soliton);
  check("so5c", "alpha1=1", Expectation::not_soliton);
  check("sl3c", "alpha1=0.6,alpha2=0.8", Expectation::soliton);
  check("sl4h", "alpha1=s2/2,alpha3=s2/2", Expectation::soliton);
  check("sl4h", "alpha1=0.6,alpha3=0.8", Expectation::not_soliton);
  check("split:G2", "alpha1=0.6,alpha2=0.8", Expectation::not_soliton);
  check("sl5c", "alpha2=1", Expectation::not_soliton);
}

TEST_CASE("empty catalog gives an empty report") {
  auto r = run_catalog({});
  CHECK(r.cases.empty());
  CHECK(r.passed());
}

TEST_CASE("reports are deterministic and independent of the worker count") {
  std::vector<CatalogEntry> entries{find_entry("so23", "(v)", 2), find_entry("sl4r", "(vi)", 2),
                                    find_entry("sl3h", "negative", 2)};
  auto a = run_catalog(entries, ModeRequest::automatic, 1);
  auto b = run_catalog(entries, ModeRequest::automatic, 3);
  CHECK(a.passed());
  CHECK(report_json(a) == report_json(b));
  CHECK(report_text(a) == report_text(b));
}

TEST_CASE("verdict JSON schema") {
  auto rec = run_case(iwasawa_for("sl4r"), NormalVectorSpec::parse("alpha1=s2/2,alpha3=s2/2"), ModeRequest::automatic,
                      Expectation::soliton);
  auto j = nlohmann::json::parse(verdict_json(rec));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  std::set<std::string> expected{"space", "phi", "coeffs", "seed", "is_soliton", "c", "residual", "mode", "dim_s", "paths_agree"};
  CHECK(std::set<std::string>(keys.begin(), keys.end()) == expected);
  CHECK(j["space"] == "sl4r");
  CHECK(j["phi"] == nlohmann::json::array({"alpha1", "alpha3"}));
  CHECK(j["coeffs"] == nlohmann::json::array({"s2/2", "s2/2"}));
  CHECK(j["is_soliton"] == true);
  CHECK(j["c"] == "-1/8");
  CHECK(j["residual"] == "0");
  CHECK(j["mode"] == "exact");
  CHECK(j["dim_s"] == 5);
  CHECK(j["paths_agree"] == true);
  CHECK(rec.float_agrees == true);
}

TEST_CASE("forced exact mode on a non-exact spec is an error") {
  auto rec = run_case(iwasawa_for("so23"), NormalVectorSpec::parse("alpha1=s2/2,alpha2=s2/2"), ModeRequest::exact,
                      Expectation::soliton);
  CHECK_FALSE(rec.error.empty());
  CHECK_FALSE(rec.match);
  auto fl = run_case(iwasawa_for("so23"), NormalVectorSpec::parse("alpha1=s2/2,alpha2=s2/2"), ModeRequest::automatic,
                     Expectation::soliton);
  CHECK(fl.match);
  CHECK(fl.mode == NumericMode::floating);
}

TEST_CASE("a mismatching expectation is reported") {
  auto rec = run_case(iwasawa_for("so25"), NormalVectorSpec::parse("alpha1=s6/3,alpha2=s3/3"), ModeRequest::automatic,
                      Expectation::soliton);
  CHECK_FALSE(rec.match);
  CHECK(rec.disagreement.find("expected soliton") != std::string::npos);
}

TEST_CASE("rank observations flag contradictions") {
  Report r;
  CaseRecord bad;
  bad.space_id = "fake";
  bad.verdict_formula = true;
  bad.rank = 4;
  bad.split = false;
  bad.nilpotency = 5;
  r.cases.push_back(bad);
  CHECK(rank_observations(r).size() == 2);
  bad.item_ii_case = true;
  bad.split = true;
  r.cases[0] = bad;
  CHECK(rank_observations(r).empty());
}

TEST_CASE("sweep of one space") {
  auto iw = iwasawa_for("so23");
  auto specs = sweep_specs(*iw, GridConfig{4, 2});
  CHECK(specs.size() == 2 + 4 + 1);
  for (const auto& s : specs) {
    auto rec = run_case(iw, s, ModeRequest::automatic, main_theorem_expectation(*iw, s));
    CHECK(rec.match);
    CHECK(rec.verdict_formula);
  }
}
