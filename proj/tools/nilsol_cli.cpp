#include "nilsol/classify.hpp"
#include "nilsol/errors.hpp"
#include "nilsol/suites.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace nilsol;

namespace {

int cmd_list() {
  for (const auto& id : catalog_space_ids()) std::cout << id << "\n";
  return 0;
}

void print_case(const CaseRecord& r) {
  std::cout << r.space_id << " [" << r.spec.text() << "]";
  if (r.spec.seed) std::cout << " seed=" << *r.spec.seed;
  std::cout << "\n  verdict: " << (r.verdict_formula ? "soliton" : "not soliton") << " (" << to_string(r.mode) << ")\n";
  std::cout << "  c: " << r.c << "   residual: " << r.residual << "   dim s: " << r.dim_s
            << "   nilpotency: " << r.nilpotency << "\n";
  std::cout << "  oracle: " << (r.verdict_oracle ? "soliton" : "not soliton") << ", c_oracle " << r.c_oracle
            << "   gauss residual: " << r.gauss_residual << "\n";
  std::cout << "  paths agree: " << (r.paths_agree ? "yes" : "no");
  if (r.float_agrees) std::cout << "   float agrees: " << (*r.float_agrees ? "yes" : "no");
  std::cout << "\n  predicate: " << to_string(r.expected) << (r.match ? "" : "   MISMATCH " + r.disagreement) << "\n";
}

int cmd_check(const std::string& space, const std::string& xi, bool exact, bool floating, std::optional<std::uint64_t> seed,
              bool json) {
  auto iw = iwasawa_for(space);
  auto spec = NormalVectorSpec::parse(xi, seed);
  ModeRequest mode = exact ? ModeRequest::exact : floating ? ModeRequest::floating : ModeRequest::automatic;
  auto rec = run_case(iw, spec, mode, main_theorem_expectation(*iw, spec));
  if (!rec.error.empty()) throw Error(rec.error);
  if (json) std::cout << verdict_json(rec, 2) << "\n";
  else print_case(rec);
  return rec.paths_agree ? 0 : 1;
}

int cmd_classify(const std::string& space, int grid_steps, bool json) {
  auto iw = iwasawa_for(space);
  GridConfig grid;
  if (grid_steps > 0) {
    grid.pair_steps = grid_steps;
    grid.simplex_extra = std::max(1, grid_steps / 3);
  }
  Report report;
  for (const auto& spec : sweep_specs(*iw, grid))
    report.cases.push_back(run_case(iw, spec, ModeRequest::automatic, main_theorem_expectation(*iw, spec)));
  report.observation_failures = rank_observations(report);
  if (json) {
    std::cout << "[";
    for (std::size_t i = 0; i < report.cases.size(); ++i) std::cout << (i ? ",\n " : "") << verdict_json(report.cases[i]);
    std::cout << "]\n";
  } else {
    std::cout << report_text(report);
  }
  return report.passed() ? 0 : 1;
}

int cmd_catalog(const std::string& out, unsigned jobs, bool timing, int grid_steps) {
  GridConfig grid;
  if (grid_steps > 0) grid.pair_steps = grid_steps;
  auto report = run_catalog(golden_table(), ModeRequest::automatic, jobs, grid);
  std::cout << report_text(report, timing);
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw Error("cannot write " + out);
    f << report_json(report, timing);
  }
  return report.passed() ? 0 : 1;
}

int cmd_verify(const std::string& suite, const std::string& space, std::uint64_t seed, std::size_t samples) {
  std::vector<std::string> spaces;
  if (space == "all") {
    for (const auto& id : catalog_space_ids())
      if (id != "sl2r" && id != "split:A1") spaces.push_back(id);  // dim 𝔫 = 1
  } else {
    spaces.push_back(space);
  }
  bool ok = true;
  for (const auto& id : spaces) {
    auto iw = iwasawa_for(id);
    std::vector<SuiteReport> reports;
    if (suite == "lemmas" || suite == "all") reports.push_back(lemma_suite(iw, seed, samples));
    if (suite == "geometry" || suite == "all") reports.push_back(geometry_suite(iw));
    if (suite == "closed-forms" || suite == "all") {
      std::mt19937_64 rng(seed);
      for (int k = 0; k < 3; ++k)
        reports.push_back(closed_form_suite(make_hypersurface<Rational>(iw, random_exact_spec(*iw, rng))));
    }
    for (const auto& r : reports) {
      std::cout << r.to_text();
      ok = ok && r.passed();
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Codimension-one Ricci soliton subgroups of nilpotent Iwasawa groups"};
  app.require_subcommand(1);

  app.add_subcommand("list-spaces", "print catalog identifiers");

  auto* check = app.add_subcommand("check", "single verdict");
  std::string space, xi;
  bool exact = false, floating = false, json = false;
  std::optional<std::uint64_t> seed;
  check->add_option("--space", space, "space identifier")->required();
  check->add_option("--xi", xi, "normal vector, e.g. \"alpha1=s2/2,alpha3=s2/2\"")->required();
  auto* ex = check->add_flag("--exact", exact, "force exact arithmetic");
  check->add_flag("--float", floating, "force floating arithmetic")->excludes(ex);
  check->add_option("--seed", seed, "random unit vectors inside each root space");
  check->add_flag("--json", json, "JSON verdict");

  auto* classify = app.add_subcommand("classify", "sweep all Φ-families of one space");
  int grid = 0;
  classify->add_option("--space", space, "space identifier")->required();
  classify->add_option("--grid", grid, "coefficient grid steps (default 9)");
  classify->add_flag("--json", json, "JSON verdicts");

  auto* catalog = app.add_subcommand("catalog-run", "golden table run");
  std::string out;
  unsigned jobs = 1;
  bool timing = false;
  catalog->add_option("--out", out, "JSON report path");
  catalog->add_option("--jobs", jobs, "worker threads");
  catalog->add_flag("--timing", timing, "include per-case runtimes");
  catalog->add_option("--grid", grid, "pair grid steps (default 9)");

  auto* verify = app.add_subcommand("verify", "structural identity suites");
  std::string suite = "all";
  std::uint64_t vseed = 1;
  std::size_t samples = 100;
  verify->add_option("--suite", suite, "lemmas|geometry|closed-forms|all")
      ->check(CLI::IsMember({"lemmas", "geometry", "closed-forms", "all"}));
  verify->add_option("--space", space, "space identifier or 'all'")->required();
  verify->add_option("--seed", vseed, "sampling seed");
  verify->add_option("--samples", samples, "samples per identity");

  CLI11_PARSE(app, argc, argv);
  try {
    if (app.got_subcommand("list-spaces")) return cmd_list();
    if (app.got_subcommand(check)) return cmd_check(space, xi, exact, floating, seed, json);
    if (app.got_subcommand(classify)) return cmd_classify(space, grid, json);
    if (app.got_subcommand(catalog)) return cmd_catalog(out, jobs, timing, grid);
    if (app.got_subcommand(verify)) return cmd_verify(suite, space, vseed, samples);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
