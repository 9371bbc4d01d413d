#pragma once

#include "nilsol/hypersurface.hpp"

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace nilsol {

struct IdentityCheck {
  std::string name;
  std::size_t samples = 0;
  bool skipped = false;
  bool passed = true;
  NumericMode mode = NumericMode::exact;
  std::string max_residual = "0";
  std::string note;
};

struct SuiteReport {
  std::string space_id;
  std::string suite;
  std::vector<IdentityCheck> checks;

  bool passed() const;
  std::string to_text() const;
};

// Random Φ ⊆ Π with rational directions chosen so that every a_γ² is rational (exact mode always available).
NormalVectorSpec random_exact_spec(const IwasawaPackage& iw, std::mt19937_64& rng);

// Root-space identities of 𝔤 and the normal-vector identities of random hypersurfaces.
SuiteReport lemma_suite(std::shared_ptr<const IwasawaPackage> iw, std::uint64_t seed = 1, std::size_t samples = 100);

// N inside AN: connection, mean curvature, Ric^N structure, nilsoliton property.
SuiteReport geometry_suite(std::shared_ptr<const IwasawaPackage> iw);

// Closed forms for R_ξ + S_ξ² and (ad ℋ)^⊤ against the general formula and the connection of N.
template <class F>
SuiteReport closed_form_suite(const HypersurfaceAlgebra<F>& h);

}  // namespace nilsol
