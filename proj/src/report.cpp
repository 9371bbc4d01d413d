#include "nilsol/classify.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace nilsol {

namespace {

using nlohmann::ordered_json;

ordered_json verdict_object(const CaseRecord& r) {
  ordered_json j;
  j["space"] = r.space_id;
  j["phi"] = r.spec.phi_names();
  j["coeffs"] = r.spec.coeff_texts();
  j["seed"] = r.spec.seed.value_or(0);  // 0: first basis vector of each g_γ
  j["is_soliton"] = r.verdict_formula;
  j["c"] = r.c;
  j["residual"] = r.residual;
  j["mode"] = to_string(r.mode);
  j["dim_s"] = r.dim_s;
  j["paths_agree"] = r.paths_agree;
  return j;
}

ordered_json case_object(const CaseRecord& r, bool timing) {
  ordered_json j = verdict_object(r);
  j["provenance"] = r.provenance;
  j["verdict_oracle"] = r.verdict_oracle;
  j["c_oracle"] = r.c_oracle;
  j["gauss_residual"] = r.gauss_residual;
  j["nilpotency"] = r.nilpotency;
  if (r.float_agrees) j["float_agrees"] = *r.float_agrees;
  j["expected"] = to_string(r.expected);
  j["match"] = r.match;
  if (!r.disagreement.empty()) j["disagreement"] = r.disagreement;
  if (!r.error.empty()) j["error"] = r.error;
  if (timing) j["runtime_ms"] = r.runtime_ms;
  return j;
}

}  // namespace

std::string verdict_json(const CaseRecord& rec, int indent) {
  ordered_json j = verdict_object(rec);
  if (!rec.error.empty()) j["error"] = rec.error;
  return j.dump(indent);
}

std::string report_json(const Report& report, bool timing) {
  ordered_json j;
  j["passed"] = report.passed();
  j["cases_total"] = report.cases.size();
  j["mismatches"] = report.mismatches();
  ordered_json cases = ordered_json::array();
  for (const auto& c : report.cases) cases.push_back(case_object(c, timing));
  j["cases"] = std::move(cases);
  ordered_json unverified = ordered_json::array();
  for (const auto& e : report.unverified)
    unverified.push_back({{"space", e.space_id}, {"family", e.family.describe()}, {"provenance", e.provenance}, {"note", e.note}});
  j["expected_unverified"] = std::move(unverified);
  j["observation_failures"] = report.observation_failures;
  return j.dump(2) + "\n";
}

std::string report_text(const Report& report, bool timing) {
  std::ostringstream os;
  double total_ms = 0;
  for (const auto& c : report.cases) {
    total_ms += c.runtime_ms;
    os << (c.match ? "ok   " : "FAIL ") << c.space_id << " [" << c.spec.text();
    if (c.spec.seed) os << " seed=" << *c.spec.seed;
    os << "] " << c.provenance << ": " << (c.verdict_formula ? "soliton" : "not soliton");
    if (c.verdict_formula) os << " c=" << c.c;
    os << " (" << to_string(c.mode) << ", dim s=" << c.dim_s << ")";
    if (!c.error.empty()) os << "  error: " << c.error;
    if (!c.disagreement.empty()) os << "  " << c.disagreement;
    if (timing) {
      char buf[32];
      std::snprintf(buf, sizeof buf, " %.1f ms", c.runtime_ms);
      os << buf;
    }
    os << "\n";
  }
  for (const auto& e : report.unverified)
    os << "unverified " << e.space_id << " " << e.family.describe() << " " << e.provenance << ": " << e.note << "\n";
  for (const auto& f : report.observation_failures) os << "observation violated: " << f << "\n";
  os << report.cases.size() << " cases, " << report.mismatches() << " mismatches, " << report.unverified.size()
     << " expected_unverified";
  if (timing) {
    char buf[48];
    std::snprintf(buf, sizeof buf, ", %.2f s case time", total_ms / 1000);
    os << buf;
  }
  os << "\n" << (report.passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace nilsol
