#include "nilsol/classify.hpp"

#include "nilsol/errors.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace nilsol {

std::string to_string(Expectation e) {
  switch (e) {
    case Expectation::soliton: return "soliton";
    case Expectation::not_soliton: return "not_soliton";
    case Expectation::expected_unverified: return "expected_unverified";
  }
  return "?";
}

std::string XiFamily::describe() const {
  std::ostringstream os;
  switch (kind) {
    case FamilyKind::single_root: os << "single_root("; break;
    case FamilyKind::pair: os << "pair("; break;
    case FamilyKind::full_simplex: os << "simplex("; break;
  }
  for (std::size_t i = 0; i < phi.size(); ++i) os << (i ? "," : "") << "alpha" << phi[i] + 1;
  os << ")";
  if (use_grid) os << (off_special_only ? " off-special grid" : " grid");
  for (const auto& p : points) {
    os << " [";
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    os << "]";
  }
  if (!seeds.empty()) os << " seeds=" << seeds.size();
  return os.str();
}

namespace {

const std::string kEqualPair = "s2/2";

CatalogEntry entry(std::string space, FamilyKind kind, std::vector<std::size_t> phi, Expectation e, std::string item,
                   std::string note = "") {
  CatalogEntry c;
  c.space_id = std::move(space);
  c.family.kind = kind;
  c.family.phi = std::move(phi);
  c.expected = e;
  c.provenance = std::move(item);
  c.note = std::move(note);
  return c;
}

CatalogEntry single(std::string space, std::size_t root, Expectation e, std::string item, std::vector<std::uint64_t> seeds = {}) {
  auto c = entry(std::move(space), FamilyKind::single_root, {root}, e, std::move(item));
  c.family.seeds = std::move(seeds);
  return c;
}

CatalogEntry pair_grid(std::string space, std::size_t a, std::size_t b, Expectation e, std::string item,
                       bool with_equal_point = true) {
  auto c = entry(std::move(space), FamilyKind::pair, {a, b}, e, std::move(item));
  c.family.use_grid = true;
  if (with_equal_point) c.family.points.push_back({kEqualPair, kEqualPair});
  return c;
}

CatalogEntry pair_point(std::string space, std::size_t a, std::size_t b, std::vector<std::string> point, Expectation e,
                        std::string item, std::vector<std::uint64_t> seeds = {}) {
  auto c = entry(std::move(space), FamilyKind::pair, {a, b}, e, std::move(item));
  c.family.points.push_back(std::move(point));
  c.family.seeds = std::move(seeds);
  return c;
}

const std::vector<std::uint64_t> kSeeds = {11, 12, 13, 14, 15};

// B2 pairs whose coefficient ratio matches the 2:1 norm ratio of long and short root vectors, so they run exactly
const std::vector<std::vector<std::string>> kExactB2Points = {
    {"s6/3", "s3/3"}, {"s3/3", "s6/3"}, {"1/3", "2s2/3"}, {"2s2/3", "1/3"}};

CatalogEntry with_points(CatalogEntry c, const std::vector<std::vector<std::string>>& pts) {
  c.family.points.insert(c.family.points.end(), pts.begin(), pts.end());
  return c;
}

}  // namespace

std::vector<CatalogEntry> golden_table() {
  using E = Expectation;
  using K = FamilyKind;
  std::vector<CatalogEntry> t;
  // (i) rank one: real, complex and quaternionic hyperbolic spaces
  for (const char* s : {"so31", "so41", "so51"}) t.push_back(single(s, 0, E::soliton, "(i) RH^n", kSeeds));
  for (const char* s : {"su21", "su31", "su41"}) t.push_back(single(s, 0, E::soliton, "(i) CH^n", kSeeds));
  t.push_back(single("sp21", 0, E::soliton, "(i) HH^2", kSeeds));
  t.push_back(single("sp31", 0, E::not_soliton, "(i) HH^3 absent from the list", kSeeds));
  t.push_back(entry("OH2", K::single_root, {0}, E::expected_unverified, "(i) OH^2", "no realization of F4(-20)"));
  // (ii) one-dimensional root space
  for (std::size_t i = 0; i < 3; ++i) t.push_back(single("sl4r", i, E::soliton, "(ii)"));
  for (std::size_t i = 0; i < 2; ++i) t.push_back(single("split:G2", i, E::soliton, "(ii)"));
  for (std::size_t i = 0; i < 3; ++i) t.push_back(single("split:B3", i, E::soliton, "(ii)"));
  for (std::size_t i = 0; i < 4; ++i) t.push_back(single("split:D4", i, E::soliton, "(ii)"));
  for (const char* s : {"so24", "so25", "so26", "so27", "so28"}) t.push_back(single(s, 0, E::soliton, "(ii) long root"));
  // (iii)
  for (std::size_t i = 0; i < 2; ++i) t.push_back(single("sl3h", i, E::soliton, "(iii)", kSeeds));
  t.push_back(entry("E6(-26)", K::single_root, {0}, E::expected_unverified, "(iii) E6^-26", "no realization"));
  // (iv) shortest simple root of B2 with higher multiplicity
  t.push_back(single("so5c", 1, E::soliton, "(iv)", kSeeds));
  for (const char* s : {"so24", "so25", "so26", "so27", "so28"}) t.push_back(single(s, 1, E::soliton, "(iv)", {11, 12}));
  t.push_back(single("so5c", 0, E::not_soliton, "(iv) long root of so5c"));
  // (v) every spec
  for (const char* s : {"sl3r", "sl3c", "so23", "split:A2", "split:B2"}) {
    for (std::size_t i = 0; i < 2; ++i) t.push_back(single(s, i, E::soliton, "(v)"));
    auto grid = pair_grid(s, 0, 1, E::soliton, "(v)");
    if (std::string(s) == "so23" || std::string(s) == "split:B2") grid = with_points(grid, kExactB2Points);
    t.push_back(grid);
  }
  t.push_back(pair_point("sl3c", 0, 1, {"3/5", "4/5"}, E::soliton, "(v)", kSeeds));
  // (vi) rigidity of the A3 pair
  for (const char* s : {"sl4r", "sl4c", "sl4h", "split:A3"}) {
    t.push_back(pair_point(s, 0, 2, {kEqualPair, kEqualPair}, E::soliton, "(vi)"));
    auto off = pair_grid(s, 0, 2, E::not_soliton, "(vi) off-special point", false);
    off.family.off_special_only = true;
    t.push_back(off);
  }
  t.push_back(pair_point("sl4c", 0, 2, {kEqualPair, kEqualPair}, E::soliton, "(vi)", kSeeds));
  t.push_back(pair_point("sl4h", 0, 2, {kEqualPair, kEqualPair}, E::soliton, "(vi)", kSeeds));
  // negative controls
  t.push_back(pair_grid("sl3h", 0, 1, E::not_soliton, "negative: A2 with dim g = 4, Phi = Pi"));
  t.push_back(with_points(pair_grid("so25", 0, 1, E::not_soliton, "negative: B2, Phi = Pi"), kExactB2Points));
  t.push_back(with_points(pair_grid("so5c", 0, 1, E::not_soliton, "negative: B2, Phi = Pi"), kExactB2Points));
  t.push_back(pair_grid("sl4r", 0, 1, E::not_soliton, "negative: connected pair outside A2"));
  t.push_back(pair_grid("split:G2", 0, 1, E::not_soliton, "negative: G2, Phi = Pi"));
  t.push_back(pair_grid("split:B3", 1, 2, E::not_soliton, "negative: connected pair outside A2, B2 ambient"));
  t.push_back(pair_grid("split:C3", 0, 2, E::not_soliton, "negative: orthogonal pair outside A3"));
  for (std::size_t i = 0; i < 2; ++i) t.push_back(single("su23", i, E::not_soliton, "negative: BC2, dim g > 1", kSeeds));
  t.push_back(pair_grid("su23", 0, 1, E::not_soliton, "negative: BC2, Phi = Pi"));
  for (std::size_t i = 0; i < 3; ++i) t.push_back(single("sl4h", i, E::not_soliton, "negative: dim g = 4 outside A2"));
  t.push_back(single("sl4c", 1, E::not_soliton, "negative: dim g = 2 outside A2"));
  // non-split rank four: every Φ-family
  for (std::uint64_t mask = 1; mask < 16; ++mask) {
    std::vector<std::size_t> phi;
    for (std::size_t i = 0; i < 4; ++i)
      if (mask >> i & 1) phi.push_back(i);
    if (phi.size() == 1) {
      t.push_back(single("sl5c", phi[0], E::not_soliton, "negative: rank 4 non-split"));
    } else if (phi.size() == 2) {
      t.push_back(pair_grid("sl5c", phi[0], phi[1], E::not_soliton, "negative: rank 4 non-split"));
    } else {
      auto c = entry("sl5c", K::full_simplex, phi, E::not_soliton, "negative: rank 4 non-split");
      c.family.use_grid = true;
      t.push_back(c);
    }
  }
  return t;
}

Expectation main_theorem_expectation(const IwasawaPackage& iw, const NormalVectorSpec& spec) {
  validate_spec(iw, spec);
  const auto& roots = iw.roots();
  const auto& simple = roots.simple();
  auto m = [&](std::size_t i) { return roots.multiplicity(roots.simple_index(i)); };
  auto m2 = [&](std::size_t i) {
    auto d = roots.doubled(roots.simple_index(i));
    return d ? roots.multiplicity(*d) : 0;
  };
  const int rank = roots.rank();
  if (rank == 1) {
    if (roots.reduced() || m2(0) == 1) return Expectation::soliton;  // RH^n, CH^n
    if (m(0) == 4 && m2(0) == 3) return Expectation::soliton;       // HH^2
    if (m(0) == 8 && m2(0) == 7) return Expectation::expected_unverified;
    return Expectation::not_soliton;
  }
  const auto& phi = spec.phi;
  if (phi.size() == 1 && m(phi[0]) == 1) return Expectation::soliton;  // (ii)
  bool uniform = true;
  for (std::size_t i = 1; i < static_cast<std::size_t>(rank); ++i) uniform = uniform && m(i) == m(0);
  const bool reduced = roots.reduced();
  if (reduced && simple.kind == RootKind::A && rank == 2 && uniform) {
    if (m(0) <= 2) return Expectation::soliton;                          // (v) sl3r, sl3c
    if ((m(0) == 4 || m(0) == 8) && phi.size() == 1) return Expectation::soliton;  // (iii)
  }
  if (reduced && simple.kind == RootKind::B && rank == 2) {
    if (m(0) == 1 && m(1) == 1) return Expectation::soliton;  // (v) so23
    std::size_t shortest = simple.squared_lengths[0] < simple.squared_lengths[1] ? 0 : 1;
    if (phi.size() == 1 && phi[0] == shortest) return Expectation::soliton;  // (iv)
  }
  if (reduced && simple.kind == RootKind::A && rank == 3 && uniform && m(0) <= 4 && phi == std::vector<std::size_t>{0, 2}) {
    if (spec.coeffs[0].square() == Rational(1, 2) && spec.coeffs[1].square() == Rational(1, 2))
      return Expectation::soliton;  // (vi)
  }
  return Expectation::not_soliton;
}

namespace {

std::vector<std::vector<int>> compositions(int total, std::size_t parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, std::size_t)> rec = [&](int left, std::size_t k) {
    if (k == 1) {
      cur.push_back(left);
      out.push_back(cur);
      cur.pop_back();
      return;
    }
    for (int v = 1; v <= left - static_cast<int>(k) + 1; ++v) {
      cur.push_back(v);
      rec(left - v, k - 1);
      cur.pop_back();
    }
  };
  if (parts > 0 && total >= static_cast<int>(parts)) rec(total, parts);
  return out;
}

std::vector<std::vector<std::string>> grid_points(std::size_t size, const GridConfig& grid, bool off_special_only) {
  std::vector<std::vector<std::string>> out;
  if (size == 1) return {{"1"}};
  if (size == 2) {
    const long n = grid.pair_steps + 1;
    for (long i = 1; i < n; ++i) {
      std::string a = Coefficient::from_square(Rational(i * i, n * n)).text;
      std::string b = Coefficient::from_square(Rational(n * n - i * i, n * n)).text;
      out.push_back({a, b});  // a₁ = a₂ never happens on this lattice
    }
    return out;
  }
  const int total = static_cast<int>(size) + grid.simplex_extra;
  for (const auto& comp : compositions(total, size)) {
    if (off_special_only && std::all_of(comp.begin(), comp.end(), [&](int x) { return x == comp[0]; })) continue;
    std::vector<std::string> p;
    for (int v : comp) p.push_back(Coefficient::from_square(Rational(v, total)).text);
    out.push_back(std::move(p));
  }
  return out;
}

NormalVectorSpec make_spec(const std::vector<std::size_t>& phi, const std::vector<std::string>& coeffs,
                           std::optional<std::uint64_t> seed) {
  NormalVectorSpec s;
  s.phi = phi;
  for (const auto& c : coeffs) s.coeffs.push_back(Coefficient::parse(c));
  s.seed = seed;
  return s;
}

}  // namespace

std::vector<NormalVectorSpec> expand(const CatalogEntry& e, const GridConfig& grid) {
  std::vector<NormalVectorSpec> out;
  if (e.expected == Expectation::expected_unverified) return out;
  const auto& f = e.family;
  std::vector<std::vector<std::string>> points;
  if (f.kind == FamilyKind::single_root) points.push_back({"1"});
  if (f.use_grid && f.kind != FamilyKind::single_root) {
    auto g = grid_points(f.phi.size(), grid, f.off_special_only);
    points.insert(points.end(), g.begin(), g.end());
  }
  points.insert(points.end(), f.points.begin(), f.points.end());
  for (const auto& p : points) {
    if (p.size() != f.phi.size()) throw InvalidSpec("coefficient tuple does not match Φ in " + e.space_id);
    if (f.seeds.empty()) out.push_back(make_spec(f.phi, p, std::nullopt));
    for (auto s : f.seeds) out.push_back(make_spec(f.phi, p, s));
  }
  return out;
}

std::vector<NormalVectorSpec> sweep_specs(const IwasawaPackage& iw, const GridConfig& grid) {
  std::vector<NormalVectorSpec> out;
  const std::size_t r = static_cast<std::size_t>(iw.roots().rank());
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << r); ++mask) {
    std::vector<std::size_t> phi;
    for (std::size_t i = 0; i < r; ++i)
      if (mask >> i & 1) phi.push_back(i);
    auto points = grid_points(phi.size(), grid, false);
    if (phi.size() >= 2) {
      std::string eq = Coefficient::from_square(Rational(1, static_cast<long>(phi.size()))).text;
      std::vector<std::string> p(phi.size(), eq);
      if (std::find(points.begin(), points.end(), p) == points.end()) points.push_back(p);
    }
    for (const auto& p : points) out.push_back(make_spec(phi, p, std::nullopt));
  }
  return out;
}

std::size_t Report::mismatches() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const CaseRecord& c) { return !c.match; }));
}

std::shared_ptr<const IwasawaPackage> iwasawa_for(const std::string& space_id) {
  static std::mutex mu;
  static std::map<std::string, std::shared_future<std::shared_ptr<const IwasawaPackage>>> cache;
  std::shared_future<std::shared_ptr<const IwasawaPackage>> fut;
  std::promise<std::shared_ptr<const IwasawaPackage>> promise;
  bool builder = false;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(space_id);
    if (it == cache.end()) {
      fut = promise.get_future().share();
      cache.emplace(space_id, fut);
      builder = true;
    } else {
      fut = it->second;
    }
  }
  if (builder) {
    try {
      promise.set_value(build_iwasawa(space_id));
    } catch (...) {
      promise.set_exception(std::current_exception());
    }
  }
  return fut.get();
}

namespace {

std::string decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

template <class F>
std::string scalar(const F& x) {
  if constexpr (is_exact_v<F>) {
    return Field<F>::str(x);
  } else {
    char buf[64];
    double d = Field<F>::to_double(x);
    if (std::abs(d) < 1e-12) d = 0;  // print roundoff as zero
    std::snprintf(buf, sizeof buf, "%.12g", d);
    return buf;
  }
}

template <class F>
std::string residual_text(const SolitonVerdict<F>& v) {
  if constexpr (is_exact_v<F>) {
    if (v.residual_sq.is_zero()) return "0";
  }
  return decimal(v.residual());
}

template <class F>
DualVerdict<F> run_mode(std::shared_ptr<const IwasawaPackage> iw, const NormalVectorSpec& spec, CaseRecord& rec) {
  auto h = make_hypersurface<F>(iw, spec);
  auto v = evaluate(h);
  rec.mode = Field<F>::mode;
  rec.verdict_formula = v.formula.is_soliton;
  rec.verdict_oracle = v.oracle.is_soliton;
  rec.c = v.formula.c ? scalar(*v.formula.c) : "none";
  rec.c_oracle = v.oracle.c ? scalar(*v.oracle.c) : "none";
  rec.residual = residual_text(v.formula);
  rec.gauss_residual = is_exact_v<F> ? Field<F>::str(v.gauss_residual) : decimal(Field<F>::to_double(v.gauss_residual));
  rec.dim_s = h.dim();
  rec.nilpotency = nilpotency_degree(h.s_algebra).value_or(-1);
  rec.paths_agree = v.paths_agree;
  rec.disagreement = v.disagreement;
  return v;
}

}  // namespace

CaseRecord run_case(std::shared_ptr<const IwasawaPackage> iw, const NormalVectorSpec& spec, ModeRequest mode,
                    Expectation expected, const std::string& provenance, bool cross_mode) {
  CaseRecord rec;
  rec.space_id = iw->space_id;
  rec.provenance = provenance;
  rec.spec = spec;
  rec.expected = expected;
  const auto& roots = iw->roots();
  rec.rank = roots.rank();
  rec.split = roots.reduced();
  for (std::size_t i = 0; i < roots.size(); ++i) rec.split = rec.split && roots.multiplicity(i) == 1;
  auto start = std::chrono::steady_clock::now();
  try {
    validate_spec(*iw, spec);
    rec.item_ii_case = spec.phi.size() == 1 && roots.multiplicity(roots.simple_index(spec.phi[0])) == 1;
    bool exact_ok = mode != ModeRequest::floating && exact_mode_available(*iw, spec);
    if (mode == ModeRequest::exact && !exact_ok)
      throw InvalidSpec("exact mode needs exact coefficients with rational direction ratios");
    if (exact_ok) {
      run_mode<Rational>(iw, spec, rec);
      if (cross_mode) {
        CaseRecord shadow;
        run_mode<Real>(iw, spec, shadow);
        rec.float_agrees = shadow.verdict_formula == rec.verdict_formula && shadow.verdict_oracle == rec.verdict_oracle;
      }
    } else {
      run_mode<Real>(iw, spec, rec);
    }
    std::string why;
    if (expected != Expectation::expected_unverified) {
      Expectation predicted = main_theorem_expectation(*iw, spec);
      if (predicted != expected) why += "theorem predicate says " + to_string(predicted) + "; ";
    }
    if (!rec.paths_agree) why += rec.disagreement;
    if (rec.float_agrees && !*rec.float_agrees) why += "float verdict differs from exact; ";
    bool want = expected == Expectation::soliton;
    if (expected != Expectation::expected_unverified && rec.verdict_formula != want)
      why += "expected " + to_string(expected) + "; ";
    rec.disagreement = why;
    rec.match = why.empty();
  } catch (const Error& e) {
    rec.error = e.what();
    rec.match = false;
  }
  rec.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

Report run_catalog(const std::vector<CatalogEntry>& entries, ModeRequest mode, unsigned jobs, const GridConfig& grid) {
  Report report;
  struct Task {
    const CatalogEntry* entry;
    NormalVectorSpec spec;
  };
  std::vector<Task> tasks;
  for (const auto& e : entries) {
    if (e.expected == Expectation::expected_unverified) {
      report.unverified.push_back(e);
      continue;
    }
    for (auto& s : expand(e, grid)) tasks.push_back({&e, std::move(s)});
  }
  report.cases.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto& t = tasks[i];
      try {
        report.cases[i] = run_case(iwasawa_for(t.entry->space_id), t.spec, mode, t.entry->expected, t.entry->provenance);
      } catch (const std::exception& e) {
        CaseRecord rec;
        rec.space_id = t.entry->space_id;
        rec.provenance = t.entry->provenance;
        rec.spec = t.spec;
        rec.expected = t.entry->expected;
        rec.error = e.what();
        report.cases[i] = std::move(rec);
      }
    }
  };
  jobs = std::max(1u, jobs);
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  report.observation_failures = rank_observations(report);
  return report;
}

std::vector<std::string> rank_observations(const Report& report) {
  std::vector<std::string> out;
  for (const auto& c : report.cases) {
    if (!c.error.empty() || !c.verdict_formula) continue;
    std::string where = c.space_id + " [" + c.spec.text() + "]";
    if (!c.split && c.rank >= 4) out.push_back(where + ": soliton in a non-split space of rank " + std::to_string(c.rank));
    if (!c.item_ii_case && (c.nilpotency < 0 || c.nilpotency > 3))
      out.push_back(where + ": soliton with nilpotency degree " + std::to_string(c.nilpotency));
  }
  return out;
}

}  // namespace nilsol
