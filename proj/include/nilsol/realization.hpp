#pragma once

#include "nilsol/algebra.hpp"
#include "nilsol/rootsys.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nilsol {

enum class RealFormFamily { sl_real, sl_complex, sl_quaternion, su_pq, so_pq, sp_pq, so_complex, split_from_rootsystem };

struct RealFormDescriptor {
  RealFormFamily family = RealFormFamily::sl_real;
  int n = 0;  // matrix size for sl/so_complex
  int p = 0;  // signature for su/so/sp, p <= q
  int q = 0;
  std::optional<SimpleSystem> simple;  // split_from_rootsystem only

  std::string describe() const;
};

// Catalog identifiers, e.g. "sl3h", "so25", "su31", "split:G2".
std::vector<std::string> catalog_space_ids();
RealFormDescriptor descriptor_for(const std::string& space_id);

struct CartanPackage {
  RealFormDescriptor descriptor;
  MetricLieAlgebra<Rational> g;  // Gram is B_θ
  Matrix<Rational> theta;
  Matrix<Rational> killing;
  std::vector<Vec<Rational>> a_basis;
};

CartanPackage build_matrix_realization(const RealFormDescriptor& desc);
CartanPackage build_split_realization(const SimpleSystem& simple);
CartanPackage build_realization(const RealFormDescriptor& desc);

// Chevalley structure constants N_{r,s} for a reduced system, keyed by full root coordinates.
class ChevalleyConstants {
 public:
  explicit ChevalleyConstants(const RootSystemData& roots);
  // N_{r,s} with [e_r, e_s] = N_{r,s} e_{r+s}; 0 when r+s is not a root
  int operator()(const std::vector<int>& r, const std::vector<int>& s) const;

 private:
  const RootSystemData& roots_;
  mutable std::map<std::pair<std::vector<int>, std::vector<int>>, int> memo_;
  Rational len2(const std::vector<int>& r) const;
  bool is_root(const std::vector<int>& r) const { return roots_.is_root(r); }
  bool positive(const std::vector<int>& r) const;
  std::size_t order_index(const std::vector<int>& r) const;
};

/// Joint eigenspace decomposition of 𝔤 under ad(𝔞).
struct RestrictedDecomposition {
  RootSystemData roots;                                     // canonical Dynkin order, multiplicities set
  std::vector<Vec<Rational>> functionals;                   // λ(a_j) per positive root
  std::vector<std::vector<Vec<Rational>>> positive_spaces;  // B_θ-orthogonal bases of g_λ
  std::vector<std::vector<Vec<Rational>>> negative_spaces;  // θ-images
  std::vector<Vec<Rational>> a_basis;
  std::vector<Vec<Rational>> k0_basis;
  std::vector<Vec<Rational>> h_coordinates;                 // H_λ in the a_basis, B(H_λ,H) = λ(H)
  Matrix<Rational> killing_on_a;
};

RestrictedDecomposition restricted_decomposition(const CartanPackage& pkg);

}  // namespace nilsol
