#pragma once

#include "nilsol/hypersurface.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nilsol {

enum class Expectation { soliton, not_soliton, expected_unverified };
std::string to_string(Expectation e);

enum class FamilyKind {
  single_root,   // Φ = {γ}, a = 1, one case per seed
  pair,          // Φ = {γ₁, γ₂}, coefficient grid and/or explicit points
  full_simplex,  // Φ of any size, a_γ² on a lattice of the simplex
};

/// Coefficient grid.  Pairs use a₁ = i/(steps+1), i = 1..steps; larger Φ use a_γ² = n_γ/N with
/// N = |Φ| + simplex_extra.  Exact special points such as (s2/2, s2/2) are listed per entry.
struct GridConfig {
  int pair_steps = 9;
  int simplex_extra = 2;
};

struct XiFamily {
  FamilyKind kind = FamilyKind::single_root;
  std::vector<std::size_t> phi;             // 0-based simple root indices
  bool use_grid = false;                    // sweep the GridConfig lattice
  bool off_special_only = false;            // drop grid points with all a_γ equal
  std::vector<std::vector<std::string>> points;  // explicit coefficient tuples
  std::vector<std::uint64_t> seeds;         // direction seeds; empty = default directions

  std::string describe() const;
};

struct CatalogEntry {
  std::string space_id;
  XiFamily family;
  Expectation expected = Expectation::soliton;
  std::string provenance;  // classification item, e.g. "(iv)", or the negative proposition it rests on
  std::string note;
};

// Fixed golden table of the classification.  Entries whose space has no realization are expected_unverified.
std::vector<CatalogEntry> golden_table();

// Classification predicate, evaluated from the root data alone.
Expectation main_theorem_expectation(const IwasawaPackage& iw, const NormalVectorSpec& spec);

// All specs of one entry's family.
std::vector<NormalVectorSpec> expand(const CatalogEntry& entry, const GridConfig& grid = {});

// Every Φ-family of a space: each nonempty Φ ⊆ Π on the grid, plus the equal-coefficient point.
std::vector<NormalVectorSpec> sweep_specs(const IwasawaPackage& iw, const GridConfig& grid = {});

struct CaseRecord {
  std::string space_id;
  std::string provenance;
  NormalVectorSpec spec;
  NumericMode mode = NumericMode::exact;
  bool verdict_formula = false;
  bool verdict_oracle = false;
  std::string c;              // D₀ + c·id is a derivation
  std::string c_oracle;       // Ric − c·id is a derivation
  std::string residual;       // minimal derivation defect
  std::string gauss_residual;
  std::size_t dim_s = 0;
  int nilpotency = 0;         // lower central series length of 𝔰
  bool split = false;         // all multiplicities one
  int rank = 0;
  bool item_ii_case = false;  // Φ = {α} with dim g_α = 1
  bool paths_agree = false;
  std::optional<bool> float_agrees;  // exact verdict re-run in floating mode
  Expectation expected = Expectation::soliton;
  bool match = false;
  std::string disagreement;
  std::string error;
  double runtime_ms = 0;
};

struct Report {
  std::vector<CaseRecord> cases;
  std::vector<CatalogEntry> unverified;
  std::vector<std::string> observation_failures;

  std::size_t mismatches() const;
  bool passed() const { return mismatches() == 0 && observation_failures.empty(); }
};

// Single case: exact when ModeRequest allows and the spec admits it, otherwise floating.
CaseRecord run_case(std::shared_ptr<const IwasawaPackage> iw, const NormalVectorSpec& spec, ModeRequest mode,
                    Expectation expected, const std::string& provenance = "", bool cross_mode = true);

Report run_catalog(const std::vector<CatalogEntry>& entries, ModeRequest mode = ModeRequest::automatic,
                   unsigned jobs = 1, const GridConfig& grid = {});

// Corollary checks: no soliton in a non-split space of rank ≥ 4, nilpotency degree ≤ 3 outside item (ii).
std::vector<std::string> rank_observations(const Report& report);

// Cached construction; thread safe.
std::shared_ptr<const IwasawaPackage> iwasawa_for(const std::string& space_id);

// JSON (field names fixed by the verdict schema) and plain-text renderings.
std::string verdict_json(const CaseRecord& rec, int indent = -1);
std::string report_json(const Report& report, bool timing = false);
std::string report_text(const Report& report, bool timing = false);

}  // namespace nilsol
