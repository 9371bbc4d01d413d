#include "nilsol/rootsys.hpp"

#include "nilsol/errors.hpp"

#include <algorithm>

namespace nilsol {

std::string kind_name(RootKind kind) {
  switch (kind) {
    case RootKind::A: return "A";
    case RootKind::B: return "B";
    case RootKind::C: return "C";
    case RootKind::D: return "D";
    case RootKind::BC: return "BC";
    case RootKind::G2: return "G";
    case RootKind::F4: return "F";
  }
  return "?";
}

SimpleSystem SimpleSystem::make(RootKind kind, int rank) {
  bool ok = false;
  switch (kind) {
    case RootKind::A: ok = rank >= 1 && rank <= 4; break;
    case RootKind::B: ok = rank >= 2 && rank <= 4; break;
    case RootKind::C: ok = rank >= 2 && rank <= 4; break;
    case RootKind::D: ok = rank == 4; break;
    case RootKind::BC: ok = rank >= 1 && rank <= 4; break;
    case RootKind::G2: ok = rank == 2; break;
    case RootKind::F4: ok = rank == 4; break;
  }
  if (!ok) throw UnsupportedSystem(kind_name(kind) + std::to_string(rank));

  SimpleSystem s;
  s.kind = kind;
  s.rank = rank;
  const auto n = static_cast<std::size_t>(rank);
  s.cartan.assign(n, std::vector<int>(n, 0));
  s.squared_lengths.assign(n, Rational(2));
  for (std::size_t i = 0; i < n; ++i) s.cartan[i][i] = 2;
  auto link = [&](std::size_t i, std::size_t j) { s.cartan[i][j] = s.cartan[j][i] = -1; };

  switch (kind) {
    case RootKind::A:
      for (std::size_t i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case RootKind::B:
    case RootKind::BC:
      for (std::size_t i = 0; i + 1 < n; ++i) link(i, i + 1);
      for (std::size_t i = 0; i + 1 < n; ++i) s.squared_lengths[i] = 4;
      if (n >= 2) s.cartan[n - 1][n - 2] = -2;
      break;
    case RootKind::C:
      for (std::size_t i = 0; i + 1 < n; ++i) link(i, i + 1);
      s.squared_lengths[n - 1] = 4;
      s.cartan[n - 2][n - 1] = -2;
      break;
    case RootKind::D:
      link(0, 1);
      link(1, 2);
      link(1, 3);
      break;
    case RootKind::G2:
      s.squared_lengths[1] = 6;
      s.cartan[0][1] = -3;
      s.cartan[1][0] = -1;
      break;
    case RootKind::F4:
      link(0, 1);
      link(2, 3);
      s.squared_lengths[0] = s.squared_lengths[1] = 4;
      s.cartan[1][2] = -1;
      s.cartan[2][1] = -2;
      break;
  }
  s.validate();
  return s;
}

std::string SimpleSystem::label() const { return kind_name(kind) + std::to_string(rank); }

Rational SimpleSystem::inner(std::size_t i, std::size_t j) const {
  return Rational(cartan[i][j]) * squared_lengths[i] / 2;
}

void SimpleSystem::validate() const {
  const auto n = static_cast<std::size_t>(rank);
  if (rank <= 0 || cartan.size() != n || squared_lengths.size() != n)
    throw UnsupportedSystem("malformed simple system");
  for (std::size_t i = 0; i < n; ++i) {
    if (cartan[i].size() != n || cartan[i][i] != 2) throw UnsupportedSystem("Cartan diagonal must be 2");
    if (squared_lengths[i] <= 0) throw UnsupportedSystem("non-positive squared length");
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      int a = cartan[i][j];
      if (a > 0 || a < -3) throw UnsupportedSystem("Cartan entry out of range");
      if ((a == 0) != (cartan[j][i] == 0)) throw UnsupportedSystem("Cartan zero pattern not symmetric");
      if (Rational(a) * squared_lengths[i] != Rational(cartan[j][i]) * squared_lengths[j])
        throw UnsupportedSystem("squared lengths inconsistent with Cartan matrix");
    }
  }
}

RootSystemData::RootSystemData(SimpleSystem simple, std::vector<Root> positive)
    : simple_(std::move(simple)), positive_(std::move(positive)) {
  std::sort(positive_.begin(), positive_.end(), [](const Root& a, const Root& b) {
    if (a.level != b.level) return a.level < b.level;
    return a.coords < b.coords;
  });
  for (std::size_t i = 0; i < positive_.size(); ++i) {
    auto [it, fresh] = index_.emplace(positive_[i].coords, i);
    if (!fresh) throw UnsupportedSystem("duplicate root");
  }
}

std::optional<std::size_t> RootSystemData::find(const std::vector<int>& coords) const {
  auto it = index_.find(coords);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool RootSystemData::is_root(const std::vector<int>& coords) const {
  if (find(coords)) return true;
  std::vector<int> neg(coords);
  for (auto& c : neg) c = -c;
  return find(neg).has_value();
}

std::size_t RootSystemData::simple_index(std::size_t i) const {
  std::vector<int> e(static_cast<std::size_t>(rank()), 0);
  e.at(i) = 1;
  return *find(e);
}

Rational RootSystemData::inner(const std::vector<int>& a, const std::vector<int>& b) const {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) s += Rational(a[i] * b[j]) * simple_.inner(i, j);
  }
  return s;
}

bool RootSystemData::reduced() const {
  for (std::size_t i = 0; i < positive_.size(); ++i)
    if (doubled(i)) return false;
  return true;
}

std::optional<std::size_t> RootSystemData::doubled(std::size_t idx) const {
  std::vector<int> d = positive_.at(idx).coords;
  for (auto& c : d) c *= 2;
  return find(d);
}

void RootSystemData::set_multiplicities(std::vector<int> mult) {
  if (mult.size() != positive_.size()) throw DimensionError("multiplicity table size mismatch");
  for (int m : mult)
    if (m <= 0) throw DimensionError("multiplicities must be positive");
  mult_ = std::move(mult);
}

int RootSystemData::multiplicity(std::size_t idx) const {
  if (mult_.empty()) throw MultiplicitiesUnset("root system " + simple_.label());
  return mult_.at(idx);
}

int RootSystemData::multiplicity_of(const std::vector<int>& coords) const {
  auto idx = find(coords);
  if (!idx) return 0;
  return multiplicity(*idx);
}

int RootSystemData::dimension_n() const {
  int s = 0;
  for (std::size_t i = 0; i < positive_.size(); ++i) s += multiplicity(i);
  return s;
}

namespace {

Root make_root(const SimpleSystem& simple, std::vector<int> coords) {
  Root r;
  r.level = 0;
  for (int c : coords) r.level += c;
  Rational len = 0;
  for (std::size_t i = 0; i < coords.size(); ++i)
    for (std::size_t j = 0; j < coords.size(); ++j)
      if (coords[i] != 0 && coords[j] != 0) len += Rational(coords[i] * coords[j]) * simple.inner(i, j);
  r.squared_length = len;
  r.coords = std::move(coords);
  return r;
}

}  // namespace

RootSystemData build_root_system(const SimpleSystem& simple) {
  simple.validate();
  // re-validate kind/rank support
  (void)SimpleSystem::make(simple.kind, simple.rank);
  const auto n = static_cast<std::size_t>(simple.rank);

  std::map<std::vector<int>, bool> known;
  std::vector<std::vector<std::vector<int>>> by_level(1);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    by_level[0].push_back(e);
    known[e] = true;
  }
  auto cartan_with_simple = [&](std::size_t i, const std::vector<int>& lam) {
    // A_{α_i, λ} = Σ_j λ_j A_{ij}
    int a = 0;
    for (std::size_t j = 0; j < n; ++j) a += lam[j] * simple.cartan[i][j];
    return a;
  };
  for (std::size_t level = 0; level < by_level.size(); ++level) {
    std::vector<std::vector<int>> next;
    for (const auto& lam : by_level[level]) {
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<int> e(n, 0);
        e[i] = 1;
        if (lam == e) continue;
        int p = 0;
        std::vector<int> down = lam;
        while (true) {
          down[i] -= 1;
          if (!known.count(down)) break;
          ++p;
        }
        int q = p - cartan_with_simple(i, lam);
        if (q <= 0) continue;
        std::vector<int> up = lam;
        up[i] += 1;
        if (!known.count(up)) {
          known[up] = true;
          next.push_back(up);
        }
      }
    }
    if (!next.empty()) by_level.push_back(std::move(next));
  }

  std::vector<Root> roots;
  for (const auto& [coords, _] : known) roots.push_back(make_root(simple, coords));
  if (simple.kind == RootKind::BC) {
    Rational shortest = roots.front().squared_length;
    for (const auto& r : roots) shortest = std::min(shortest, r.squared_length);
    std::vector<Root> doubled;
    for (const auto& r : roots) {
      if (r.squared_length != shortest) continue;
      std::vector<int> d = r.coords;
      for (auto& c : d) c *= 2;
      doubled.push_back(make_root(simple, d));
    }
    roots.insert(roots.end(), doubled.begin(), doubled.end());
  }
  return RootSystemData(simple, std::move(roots));
}

int cartan_integer(const RootSystemData& data, const Root& alpha, const Root& lambda) {
  Rational v = 2 * data.inner(alpha.coords, lambda.coords) / alpha.squared_length;
  if (mp::denominator(v) != 1) throw StructureMismatch("non-integral Cartan integer");
  return static_cast<int>(mp::numerator(v));
}

std::pair<int, int> root_string(const RootSystemData& data, const Root& alpha, const Root& lambda) {
  // proportional iff the 2x2 minors all vanish
  const auto& a = alpha.coords;
  const auto& l = lambda.coords;
  bool proportional = true;
  for (std::size_t i = 0; i < a.size() && proportional; ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * l[j] != a[j] * l[i]) {
        proportional = false;
        break;
      }
  if (proportional) throw ProportionalRoots("string of a root through a multiple of itself");
  auto shifted = [&](int k) {
    std::vector<int> v = l;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += k * a[i];
    return v;
  };
  int p = 0;
  while (data.is_root(shifted(-(p + 1)))) ++p;
  int q = 0;
  while (data.is_root(shifted(q + 1))) ++q;
  return {p, q};
}

std::pair<long, long> sum_strings_identity(const Root& alpha, const RootSystemData& data) {
  if (!data.has_multiplicities()) throw MultiplicitiesUnset("sum of strings needs dim g_γ");
  long lhs = 0;
  for (std::size_t i = 0; i < data.size(); ++i)
    lhs += static_cast<long>(data.multiplicity(i)) * cartan_integer(data, alpha, data.root(i));
  std::vector<int> twice = alpha.coords;
  for (auto& c : twice) c *= 2;
  long rhs = 2L * data.multiplicity_of(alpha.coords) + 4L * data.multiplicity_of(twice);
  return {lhs, rhs};
}

std::string root_name(const Root& r) {
  if (r.level == 1) {
    for (std::size_t i = 0; i < r.coords.size(); ++i)
      if (r.coords[i] == 1) return "alpha" + std::to_string(i + 1);
  }
  std::string s = "(";
  for (std::size_t i = 0; i < r.coords.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(r.coords[i]);
  }
  return s + ")";
}

}  // namespace nilsol
