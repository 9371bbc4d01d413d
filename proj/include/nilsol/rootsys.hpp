#pragma once

#include "nilsol/field.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nilsol {

enum class RootKind { A, B, C, D, BC, G2, F4 };

std::string kind_name(RootKind kind);

/// Simple roots in Bourbaki order. cartan[i][j] = 2<a_i,a_j>/|a_i|^2.
struct SimpleSystem {
  RootKind kind = RootKind::A;
  int rank = 0;
  std::vector<std::vector<int>> cartan;
  std::vector<Rational> squared_lengths;

  // Default normalization: the shortest simple root has |a|^2 = 2.
  static SimpleSystem make(RootKind kind, int rank);

  std::string label() const;
  Rational inner(std::size_t i, std::size_t j) const;
  void validate() const;
};

struct Root {
  std::vector<int> coords;
  Rational squared_length;
  int level = 0;
  bool operator==(const Root& o) const { return coords == o.coords; }
};

class RootSystemData {
 public:
  RootSystemData() = default;
  RootSystemData(SimpleSystem simple, std::vector<Root> positive);

  const SimpleSystem& simple() const noexcept { return simple_; }
  int rank() const noexcept { return simple_.rank; }
  const std::vector<Root>& positive_roots() const noexcept { return positive_; }
  const Root& root(std::size_t idx) const { return positive_.at(idx); }
  std::size_t size() const noexcept { return positive_.size(); }

  std::optional<std::size_t> find(const std::vector<int>& coords) const;
  // membership in Σ = Σ⁺ ∪ −Σ⁺
  bool is_root(const std::vector<int>& coords) const;
  std::size_t simple_index(std::size_t i) const;
  Rational inner(const std::vector<int>& a, const std::vector<int>& b) const;
  bool reduced() const;
  // coordinates of 2λ if that is a root
  std::optional<std::size_t> doubled(std::size_t idx) const;

  bool has_multiplicities() const noexcept { return !mult_.empty(); }
  void set_multiplicities(std::vector<int> mult);
  int multiplicity(std::size_t idx) const;
  // dim g_λ for arbitrary coordinates; 0 when λ is not a positive root
  int multiplicity_of(const std::vector<int>& coords) const;
  int dimension_n() const;

 private:
  SimpleSystem simple_;
  std::vector<Root> positive_;
  std::map<std::vector<int>, std::size_t> index_;
  std::vector<int> mult_;
};

RootSystemData build_root_system(const SimpleSystem& simple);

int cartan_integer(const RootSystemData& data, const Root& alpha, const Root& lambda);

// (p, q): λ − pα, …, λ + qα is the α-string through λ.
std::pair<int, int> root_string(const RootSystemData& data, const Root& alpha, const Root& lambda);

// (Σ_γ dim g_γ A_{α,γ}, 2 dim g_α + 4 dim g_{2α})
std::pair<long, long> sum_strings_identity(const Root& alpha, const RootSystemData& data);

// Positive-root name used in reports: "alpha1" for simple roots, else the coordinate tuple.
std::string root_name(const Root& r);

}  // namespace nilsol
