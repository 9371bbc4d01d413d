#include "nilsol/algebra.hpp"

#include "json.hpp"

#include <limits>
#include <map>

namespace nilsol {

template <class F>
MetricLieAlgebra<F>::MetricLieAlgebra(std::size_t dim, const std::vector<StructureConstant<F>>& constants,
                                      Matrix<F> gram)
    : dim_(dim), table_(dim * dim), gram_(std::move(gram)) {
  if (gram_.rows() != dim_ || gram_.cols() != dim_) throw DimensionError("Gram matrix shape mismatch");
  if (!is_positive_definite(gram_)) throw DegenerateMetric("Gram matrix is not symmetric positive definite");
  std::vector<std::map<std::size_t, F>> acc(dim_ * dim_);
  for (const auto& c : constants) {
    if (c.i >= dim_ || c.j >= dim_ || c.k >= dim_) throw DimensionError("structure constant index out of range");
    if (Field<F>::is_zero(c.value)) continue;
    if (c.i == c.j) throw DimensionError("nonzero [e_i, e_i] violates antisymmetry");
    auto put = [&](std::size_t i, std::size_t j, const F& v) {
      auto& slot = acc[i * dim_ + j];
      auto it = slot.find(c.k);
      if (it == slot.end()) {
        slot.emplace(c.k, v);
      } else if (!Field<F>::is_zero(it->second - v)) {
        throw DimensionError("contradictory structure constants");
      }
    };
    put(c.i, c.j, c.value);
    put(c.j, c.i, F(-c.value));
  }
  for (std::size_t p = 0; p < acc.size(); ++p)
    for (auto& [k, v] : acc[p]) table_[p].emplace_back(k, v);
}

template <class F>
F MetricLieAlgebra<F>::structure_constant(std::size_t i, std::size_t j, std::size_t k) const {
  for (const auto& [kk, v] : basis_bracket(i, j))
    if (kk == k) return v;
  return F(0);
}

template <class F>
Vec<F> MetricLieAlgebra<F>::bracket(const Vec<F>& x, const Vec<F>& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw DimensionError("bracket argument length mismatch");
  std::vector<std::size_t> ys;
  for (std::size_t j = 0; j < dim_; ++j)
    if (!Field<F>::is_zero(y[j])) ys.push_back(j);
  Vec<F> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (Field<F>::is_zero(x[i])) continue;
    for (std::size_t j : ys) {
      const auto& entry = table_[i * dim_ + j];
      if (entry.empty()) continue;
      F w = x[i] * y[j];
      for (const auto& [k, v] : entry) out[k] += w * v;
    }
  }
  return out;
}

template <class F>
std::vector<StructureConstant<F>> MetricLieAlgebra<F>::constants() const {
  std::vector<StructureConstant<F>> out;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      for (const auto& [k, v] : table_[i * dim_ + j]) out.push_back({i, j, k, v});
  return out;
}

template <class F>
bool MetricLieAlgebra<F>::is_abelian() const {
  for (const auto& e : table_)
    if (!e.empty()) return false;
  return true;
}

template <class F>
F MetricLieAlgebra<F>::jacobi_residual() const {
  F worst = 0;
  // [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]
  auto add_term = [&](Vec<F>& acc, std::size_t a, std::size_t b, std::size_t c) {
    for (const auto& [m, v] : basis_bracket(a, b))
      for (const auto& [r, w] : basis_bracket(m, c)) acc[r] += v * w;
  };
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      for (std::size_t k = j + 1; k < dim_; ++k) {
        Vec<F> acc(dim_);
        add_term(acc, i, j, k);
        add_term(acc, j, k, i);
        add_term(acc, k, i, j);
        F m = max_abs(acc);
        if (m > worst) worst = m;
      }
  return worst;
}

template <class F>
MetricLieAlgebra<F> MetricLieAlgebra<F>::with_gram(Matrix<F> gram) const {
  return MetricLieAlgebra<F>(dim_, constants(), std::move(gram));
}

template <class F>
Matrix<F> ad_matrix(const MetricLieAlgebra<F>& alg, const Vec<F>& x) {
  const std::size_t n = alg.dim();
  Matrix<F> m(n, n);
  for (std::size_t j = 0; j < n; ++j) m.set_column(j, alg.bracket(x, basis_vector<F>(n, j)));
  return m;
}

template <class F>
Matrix<F> killing_form(const MetricLieAlgebra<F>& alg) {
  const std::size_t n = alg.dim();
  // ad(e_a)[d][c] = c_{a c d}
  std::vector<Matrix<F>> ads;
  ads.reserve(n);
  for (std::size_t a = 0; a < n; ++a) {
    Matrix<F> m(n, n);
    for (std::size_t c = 0; c < n; ++c)
      for (const auto& [d, v] : alg.basis_bracket(a, c)) m(d, c) = v;
    ads.push_back(std::move(m));
  }
  Matrix<F> b(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t bb = a; bb < n; ++bb) {
      F s = 0;
      for (std::size_t c = 0; c < n; ++c)
        for (const auto& [d, v] : alg.basis_bracket(a, c)) {
          const F& w = ads[bb](c, d);
          if (!Field<F>::is_zero(w)) s += v * w;
        }
      b(a, bb) = s;
      b(bb, a) = s;
    }
  return b;
}

template <class F>
std::vector<Matrix<F>> derivation_space(const MetricLieAlgebra<F>& alg) {
  const std::size_t n = alg.dim();
  // unknown D(m,k) at column m*n + k
  std::vector<Vec<F>> rows;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t m = 0; m < n; ++m) {
        Vec<F> row(n * n);
        for (const auto& [k, v] : alg.basis_bracket(i, j)) row[m * n + k] += v;
        for (std::size_t k = 0; k < n; ++k) {
          F a = alg.structure_constant(k, j, m);
          if (!Field<F>::is_zero(a)) row[k * n + i] -= a;
          F b = alg.structure_constant(i, k, m);
          if (!Field<F>::is_zero(b)) row[k * n + j] -= b;
        }
        if (!is_zero(row)) rows.push_back(std::move(row));
      }
  std::vector<Matrix<F>> out;
  if (rows.empty()) {
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t k = 0; k < n; ++k) {
        Matrix<F> d(n, n);
        d(m, k) = 1;
        out.push_back(std::move(d));
      }
    return out;
  }
  Matrix<F> sys(rows.size(), n * n);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < n * n; ++c) sys(r, c) = rows[r][c];
  for (const auto& v : nullspace(sys)) {
    Matrix<F> d(n, n);
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t k = 0; k < n; ++k) d(m, k) = v[m * n + k];
    out.push_back(std::move(d));
  }
  return out;
}

template <class F>
std::vector<Vec<F>> derivation_defect(const MetricLieAlgebra<F>& alg, const Matrix<F>& d) {
  const std::size_t n = alg.dim();
  if (d.rows() != n || d.cols() != n) throw DimensionError("derivation candidate shape mismatch");
  std::vector<Vec<F>> images;
  for (std::size_t i = 0; i < n; ++i) images.push_back(d.column(i));
  std::vector<Vec<F>> out;
  out.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec<F> br(n);
      for (const auto& [k, v] : alg.basis_bracket(i, j)) br[k] = v;
      Vec<F> lhs = d * br;
      lhs = lhs - alg.bracket(images[i], basis_vector<F>(n, j));
      lhs = lhs - alg.bracket(basis_vector<F>(n, i), images[j]);
      out.push_back(std::move(lhs));
    }
  return out;
}

template <class F>
MetricLieAlgebra<F> subalgebra_restrict(const MetricLieAlgebra<F>& alg, const std::vector<Vec<F>>& basis) {
  for (const auto& b : basis)
    if (b.size() != alg.dim()) throw DimensionError("subalgebra basis vector length mismatch");
  SpanCoordinates<F> coords(basis);
  const std::size_t m = basis.size();
  std::vector<StructureConstant<F>> cs;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      auto c = coords.coordinates(alg.bracket(basis[i], basis[j]));
      if (!c) throw NotASubalgebra(i, j);
      for (std::size_t k = 0; k < m; ++k)
        if (!Field<F>::is_zero((*c)[k])) cs.push_back({i, j, k, (*c)[k]});
    }
  Matrix<F> g(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      g(i, j) = alg.inner(basis[i], basis[j]);
      g(j, i) = g(i, j);
    }
  return MetricLieAlgebra<F>(m, cs, std::move(g));
}

template <class F>
std::vector<std::size_t> lower_central_series(const MetricLieAlgebra<F>& alg) {
  const std::size_t n = alg.dim();
  std::vector<std::size_t> dims{n};
  std::vector<Vec<F>> current;
  for (std::size_t i = 0; i < n; ++i) current.push_back(basis_vector<F>(n, i));
  while (!current.empty()) {
    std::vector<Vec<F>> gens;
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& v : current) {
        Vec<F> w = alg.bracket(basis_vector<F>(n, i), v);
        if (!is_zero(w)) gens.push_back(std::move(w));
      }
    std::vector<Vec<F>> next;
    if (!gens.empty()) {
      Matrix<F> m(gens.size(), n);
      for (std::size_t r = 0; r < gens.size(); ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = gens[r][c];
      auto ech = row_reduce(m);
      for (std::size_t r = 0; r < ech.pivots.size(); ++r) next.push_back(ech.reduced.row(r));
    }
    if (next.size() == current.size()) break;  // stable, non-nilpotent
    dims.push_back(next.size());
    current = std::move(next);
  }
  return dims;
}

template <class F>
std::optional<int> nilpotency_degree(const MetricLieAlgebra<F>& alg) {
  auto dims = lower_central_series(alg);
  if (dims.back() != 0) return std::nullopt;
  return static_cast<int>(dims.size()) - 1;
}

namespace {

template <class F>
std::string scalar_text(const F& x) {
  if constexpr (is_exact_v<F>) {
    return x.str();
  } else {
    return x.str(std::numeric_limits<F>::max_digits10, std::ios_base::scientific);
  }
}

}  // namespace

template <class F>
std::string dump_algebra(const MetricLieAlgebra<F>& alg) {
  nlohmann::json j;
  j["dim"] = alg.dim();
  j["mode"] = to_string(Field<F>::mode);
  auto cs = nlohmann::json::array();
  for (const auto& c : alg.constants()) cs.push_back({c.i, c.j, c.k, scalar_text(c.value)});
  j["c"] = cs;
  auto g = nlohmann::json::array();
  for (std::size_t r = 0; r < alg.dim(); ++r) {
    auto row = nlohmann::json::array();
    for (std::size_t c = 0; c < alg.dim(); ++c) row.push_back(scalar_text(alg.gram()(r, c)));
    g.push_back(row);
  }
  j["gram"] = g;
  return j.dump();
}

template <class F>
MetricLieAlgebra<F> parse_algebra(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  auto parse_scalar = [](const std::string& s) -> F {
    if constexpr (is_exact_v<F>) {
      return parse_rational(s);
    } else {
      return F(s);
    }
  };
  const std::size_t n = j.at("dim").get<std::size_t>();
  std::vector<StructureConstant<F>> cs;
  for (const auto& e : j.at("c"))
    cs.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(), e.at(2).get<std::size_t>(),
                  parse_scalar(e.at(3).get<std::string>())});
  Matrix<F> g(n, n);
  const auto& rows = j.at("gram");
  if (rows.size() != n) throw DimensionError("Gram rows in dump do not match dim");
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n) throw DimensionError("Gram row length in dump does not match dim");
    for (std::size_t c = 0; c < n; ++c) g(r, c) = parse_scalar(rows[r][c].get<std::string>());
  }
  return MetricLieAlgebra<F>(n, cs, std::move(g));
}

template <class F>
MetricLieAlgebra<F> heisenberg_algebra() {
  return MetricLieAlgebra<F>(3, {{0, 1, 2, F(1)}}, Matrix<F>::identity(3));
}

template <class F>
MetricLieAlgebra<F> abelian_algebra(std::size_t dim) {
  return MetricLieAlgebra<F>(dim, {}, Matrix<F>::identity(dim));
}

template <class F>
MetricLieAlgebra<F> sl2_algebra() {
  // H = diag(1,-1), E = e12, F = e21
  return MetricLieAlgebra<F>(3, {{0, 1, 1, F(2)}, {0, 2, 2, F(-2)}, {1, 2, 0, F(1)}}, Matrix<F>::identity(3));
}

#define NILSOL_INSTANTIATE(F)                                                                          \
  template class MetricLieAlgebra<F>;                                                                  \
  template Matrix<F> ad_matrix<F>(const MetricLieAlgebra<F>&, const Vec<F>&);                         \
  template Matrix<F> killing_form<F>(const MetricLieAlgebra<F>&);                                     \
  template std::vector<Matrix<F>> derivation_space<F>(const MetricLieAlgebra<F>&);                    \
  template std::vector<Vec<F>> derivation_defect<F>(const MetricLieAlgebra<F>&, const Matrix<F>&);    \
  template MetricLieAlgebra<F> subalgebra_restrict<F>(const MetricLieAlgebra<F>&,                     \
                                                      const std::vector<Vec<F>>&);                     \
  template std::vector<std::size_t> lower_central_series<F>(const MetricLieAlgebra<F>&);              \
  template std::optional<int> nilpotency_degree<F>(const MetricLieAlgebra<F>&);                       \
  template std::string dump_algebra<F>(const MetricLieAlgebra<F>&);                                   \
  template MetricLieAlgebra<F> parse_algebra<F>(const std::string&);                                  \
  template MetricLieAlgebra<F> heisenberg_algebra<F>();                                               \
  template MetricLieAlgebra<F> abelian_algebra<F>(std::size_t);                                       \
  template MetricLieAlgebra<F> sl2_algebra<F>();

NILSOL_INSTANTIATE(Rational)
NILSOL_INSTANTIATE(Real)

#undef NILSOL_INSTANTIATE

}  // namespace nilsol
