// One pass/fail line per acceptance criterion.  Exit status 0 iff all eight pass.
#include "nilsol/classify.hpp"
#include "nilsol/errors.hpp"
#include "nilsol/suites.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>

using namespace nilsol;

namespace {

constexpr double kFloatTol = 1e-9;      // float verdict and Gauss tolerance
constexpr double kRuntimeLimit = 300;   // seconds, single-threaded catalog
constexpr std::size_t kSamples = 100;   // per lemma identity

using Q = Rational;

struct Line {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (pass) detail << " | first failure: " << why;
    pass = false;
  }
};

int failures = 0;

void emit(int n, const std::string& name, Line& l) {
  std::cout << (l.pass ? "[PASS] " : "[FAIL] ") << n << ". " << name << l.detail.str() << std::endl;
  if (!l.pass) ++failures;
}

bool has_prefix(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

Q simple_length(const IwasawaPackage& iw, std::size_t i) {
  return iw.roots().root(iw.roots().simple_index(i)).squared_length;
}

}  // namespace

int main() {
  std::cout << "float tolerance " << kFloatTol << ", lemma samples " << kSamples << ", runtime limit " << kRuntimeLimit
            << " s (single thread)" << std::endl;

  // ---- 1. golden classification
  auto t0 = std::chrono::steady_clock::now();
  auto table = golden_table();
  Report report = run_catalog(table, ModeRequest::automatic, 1);
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  {
    Line l;
    std::set<std::string> items;
    std::size_t verified_entries = 0, negatives = 0;
    for (const auto& e : table) {
      if (e.expected == Expectation::expected_unverified) continue;
      ++verified_entries;
      if (has_prefix(e.provenance, "negative")) ++negatives;
      for (const char* item : {"(i)", "(ii)", "(iii)", "(iv)", "(v)", "(vi)"})
        if (e.provenance == item || has_prefix(e.provenance, std::string(item) + " ")) items.insert(item);
    }
    l.detail << ": " << report.cases.size() << " cases from " << verified_entries << " entries, " << negatives
             << " negative controls, items covered " << items.size() << "/6, " << report.mismatches() << " mismatches, "
             << report.unverified.size() << " expected_unverified, " << seconds << " s";
    if (verified_entries < 20) l.fail("fewer than 20 verified entries");
    if (negatives < 5) l.fail("fewer than 5 negative controls");
    if (items.size() != 6) l.fail("not every classification item is covered");
    for (const auto& c : report.cases)
      if (!c.match) l.fail(c.space_id + " [" + c.spec.text() + "] " + c.error + c.disagreement);
    if (seconds > kRuntimeLimit) l.fail("runtime above limit");
    emit(1, "golden classification (catalog-run)", l);
  }

  // ---- 2. quantitative constants
  {
    Line l;
    auto so23 = iwasawa_for("so23");
    // α = short simple root (alpha2), λ = long simple root (alpha1)
    const std::size_t alpha = 1, lambda = 0;
    int m_alpha = so23->roots().multiplicity(so23->roots().simple_index(alpha));
    int m_lambda = so23->roots().multiplicity(so23->roots().simple_index(lambda));
    std::size_t checked = 0;
    for (const char* text : {"alpha1=s6/3,alpha2=s3/3", "alpha1=s3/3,alpha2=s6/3", "alpha1=1/3,alpha2=2s2/3",
                             "alpha1=2s2/3,alpha2=1/3"}) {
      auto spec = NormalVectorSpec::parse(text);
      auto h = make_hypersurface<Q>(so23, spec);
      auto v = evaluate(h);
      Q expected = spec.coeffs[alpha].square() * simple_length(*so23, alpha) * Q(m_alpha - 2 * m_lambda - 2);
      if (!v.formula.is_soliton || !v.formula.c || *v.formula.c != expected || !v.paths_agree)
        l.fail(std::string("so23 ") + text);
      ++checked;
    }
    auto sl4r = iwasawa_for("sl4r");
    auto v6 = evaluate(make_hypersurface<Q>(sl4r, NormalVectorSpec::parse("alpha1=s2/2,alpha3=s2/2")));
    Q lam = simple_length(*sl4r, 0);
    if (!v6.formula.is_soliton || *v6.formula.c != -lam / 2) l.fail("sl4r item (vi)");
    // Heisenberg: hand-derived Ric = diag(−½,−½,½) gives c = −3/2, D = diag(1,1,2)
    auto hv = soliton_decide(heisenberg_algebra<Q>());
    Matrix<Q> d(3, 3);
    d(0, 0) = 1, d(1, 1) = 1, d(2, 2) = 2;
    if (!hv.is_soliton || *hv.c != Q(-3, 2) || !hv.derivation || *hv.derivation != d) l.fail("Heisenberg");
    l.detail << ": so23 Phi=Pi exact at " << checked << " points, sl4r c = " << Field<Q>::str(*v6.formula.c)
             << " = -|lambda|^2/2, Heisenberg c = " << Field<Q>::str(*hv.c) << " D = diag(1,1,2)";
    emit(2, "quantitative constants", l);
  }

  // ---- 3. Gauss consistency over every catalog case
  {
    Line l;
    std::size_t exact = 0, floating = 0;
    double worst = 0;
    for (const auto& c : report.cases) {
      if (!c.error.empty()) {
        l.fail(c.space_id + ": " + c.error);
        continue;
      }
      if (c.mode == NumericMode::exact) {
        ++exact;
        if (c.gauss_residual != "0") l.fail(c.space_id + " [" + c.spec.text() + "] residual " + c.gauss_residual);
      } else {
        ++floating;
        double r = std::strtod(c.gauss_residual.c_str(), nullptr);
        worst = std::max(worst, r);
        if (!(r <= kFloatTol)) l.fail(c.space_id + " [" + c.spec.text() + "] residual " + c.gauss_residual);
      }
    }
    l.detail << ": " << exact << " exact cases with residual 0, " << floating << " float cases, max residual " << worst;
    emit(3, "Gauss consistency Ric_s = k id + (ad H)^T - (R + S^2)", l);
  }

  // ---- 4. lemma suites on every catalog space
  {
    Line l;
    std::size_t spaces = 0, identities = 0, skipped = 0;
    std::set<std::string> required_seen;
    const std::vector<std::string> required = {
        "adjoint rule", "bracket relation", "[thetaX, X] = <X,X>_Btheta H_l", "[g_a, g_b] = g_(a+b)",
        "span{[X_a, Y]", "[[X_a, X_l], thetaX_a]", "[[X_a, X_l], thetaX_l]", "<[X_a,X_l],[X_a,Y_l]>",
        "[T, X] in g_a", "[theta xi, xi]", "N connection: nabla_xi xi = 0", "sum over strings", "minimality",
        "normality", "Ric^N = k id + ad(H)"};
    for (const auto& id : catalog_space_ids()) {
      auto iw = iwasawa_for(id);
      if (iw->dim_n < 2) continue;  // no hypersurface exists
      ++spaces;
      auto r = lemma_suite(iw, 1, kSamples);
      for (const auto& c : r.checks) {
        if (c.skipped) {
          ++skipped;
          continue;
        }
        ++identities;
        if (!c.passed) l.fail(id + ": " + c.name + " residual " + c.max_residual + " " + c.note);
        bool is_required = false;
        for (const auto& name : required)
          if (has_prefix(c.name, name)) {
            required_seen.insert(name);
            is_required = true;
          }
        if (is_required && c.samples < kSamples && !has_prefix(c.name, "Ric^N"))
          l.fail(id + ": " + c.name + " ran " + std::to_string(c.samples) + " samples");
      }
      auto g = geometry_suite(iw);
      for (const auto& c : g.checks)
        if (!c.skipped && !c.passed) l.fail(id + ": " + c.name);
    }
    for (const auto& name : required)
      if (!required_seen.count(name)) l.fail("identity never evaluated: " + name);
    l.detail << ": " << spaces << " spaces, " << identities << " identity runs, " << skipped << " inapplicable";
    emit(4, "lemma suites", l);
  }

  // ---- 5. closed forms vs general formula and direct ad(H) projection
  {
    Line l;
    std::set<std::string> evaluated;
    std::size_t runs = 0;
    auto absorb = [&](const SuiteReport& r) {
      ++runs;
      for (const auto& c : r.checks) {
        if (c.skipped) continue;
        evaluated.insert(c.name);
        if (!c.passed) l.fail(r.space_id + " " + r.suite + ": " + c.name + " residual " + c.max_residual);
      }
    };
    std::mt19937_64 rng(2024);
    for (const auto& id : catalog_space_ids()) {
      auto iw = iwasawa_for(id);
      if (iw->dim_n < 2) continue;
      for (int k = 0; k < 3; ++k) absorb(closed_form_suite(make_hypersurface<Q>(iw, random_exact_spec(*iw, rng))));
      for (const auto& spec : sweep_specs(*iw, GridConfig{2, 1})) {
        if (exact_mode_available(*iw, spec)) absorb(closed_form_suite(make_hypersurface<Q>(iw, spec)));
        else absorb(closed_form_suite(make_hypersurface<Real>(iw, spec)));
      }
    }
    const std::vector<std::string> forms = {
        "(R+S^2)X = (1/2 sum",  "(R+S^2)X_a = 0",      "(R+S^2)X_a = 1/2",   "(R+S^2) eta_(a,l) general",
        "(R+S^2) eta_(a,l) = 1/2", "(ad H X)^T",        "(ad H eta)^T = |a|^2", "(ad H eta)^T = (a_l^2",
        "S_xi X = -nabla_X xi", "(R+S^2)X general formula vs curvature of N"};
    for (const auto& f : forms) {
      bool seen = false;
      for (const auto& e : evaluated) seen = seen || has_prefix(e, f);
      if (!seen) l.fail("closed form never applicable: " + f);
    }
    l.detail << ": " << runs << " hypersurfaces, " << forms.size() << " closed forms each evaluated at least once";
    emit(5, "closed forms agree with the general formula", l);
  }

  // ---- 6. scaling invariance
  {
    Line l;
    std::size_t cases = 0;
    const std::vector<std::pair<std::string, std::string>> picks = {
        {"so23", "alpha1=s6/3,alpha2=s3/3"}, {"sl4r", "alpha1=s2/2,alpha3=s2/2"}, {"sl3h", "alpha1=1"},
        {"so5c", "alpha2=1"},                {"sp21", "alpha1=1"},                {"so25", "alpha1=s6/3,alpha2=s3/3"},
        {"sl4c", "alpha1=1"},                {"sl3c", "alpha1=3/5,alpha2=4/5"}};
    for (const auto& [id, text] : picks) {
      auto h = make_hypersurface<Q>(iwasawa_for(id), NormalVectorSpec::parse(text));
      auto base = soliton_decide(h.s_algebra);
      for (Q t : {Q(2), Q(1, 3)}) {
        auto v = soliton_decide(h.s_algebra.with_gram(scaled(h.s_algebra.gram(), t)));
        if (v.is_soliton != base.is_soliton) l.fail(id + " verdict changed at t = " + Field<Q>::str(t));
        if (base.is_soliton && *v.c != *base.c / t) l.fail(id + " c did not scale by 1/t");
      }
      ++cases;
    }
    l.detail << ": " << cases << " cases, t in {2, 1/3}, c -> c/t exactly";
    emit(6, "scaling invariance", l);
  }

  // ---- 7. rigidity negatives
  {
    Line l;
    std::size_t sl4r_points = 0, so25_points = 0, sl3h_points = 0;
    for (const auto& c : report.cases) {
      bool sl4r_off = c.space_id == "sl4r" && has_prefix(c.provenance, "(vi) off-special");
      bool so25_pi = c.space_id == "so25" && c.spec.phi.size() == 2;
      bool sl3h_pi = c.space_id == "sl3h" && c.spec.phi.size() == 2;
      if (!(sl4r_off || so25_pi || sl3h_pi)) continue;
      sl4r_points += sl4r_off, so25_points += so25_pi, sl3h_points += sl3h_pi;
      if (c.verdict_formula || c.verdict_oracle || !c.error.empty())
        l.fail(c.space_id + " [" + c.spec.text() + "] is not rejected");
    }
    if (sl4r_points < 5 || so25_points < 5 || sl3h_points < 1) l.fail("grid too small");
    l.detail << ": sl4r off-special " << sl4r_points << " points, so25 Phi=Pi " << so25_points << " points, sl3h Phi=Pi "
             << sl3h_points << " points, all not_soliton";
    emit(7, "rigidity negatives", l);
  }

  // ---- 8. derived corollaries
  {
    Line l;
    auto violations = rank_observations(report);
    for (const auto& v : violations) l.fail(v);
    std::size_t rank4_nonsplit = 0, new_examples = 0;
    int worst = 0;
    for (const auto& c : report.cases) {
      if (!c.split && c.rank >= 4) ++rank4_nonsplit;
      bool new_item = has_prefix(c.provenance, "(iii)") || has_prefix(c.provenance, "(iv)") ||
                      has_prefix(c.provenance, "(v)") || has_prefix(c.provenance, "(vi)");
      if (new_item && c.verdict_formula) {
        ++new_examples;
        worst = std::max(worst, c.nilpotency);
        if (c.nilpotency < 1 || c.nilpotency > 3) l.fail(c.space_id + " nilpotency " + std::to_string(c.nilpotency));
      }
    }
    if (rank4_nonsplit == 0) l.fail("catalog has no non-split rank-4 case");
    l.detail << ": " << rank4_nonsplit << " non-split rank-4 cases, none soliton; " << new_examples
             << " item (iii)-(vi) solitons, max nilpotency degree " << worst;
    emit(8, "derived corollaries", l);
  }

  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAIL") << std::endl;
  return failures == 0 ? 0 : 1;
}
