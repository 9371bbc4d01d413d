#include "nilsol/realization.hpp"

#include "nilsol/errors.hpp"

#include <array>
#include <numeric>

namespace nilsol {

namespace {

// Dense integer matrix of the realified model.
struct IntMatrix {
  int n = 0;
  std::vector<long long> a;
  explicit IntMatrix(int size = 0) : n(size), a(static_cast<std::size_t>(size * size), 0) {}
  long long& operator()(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
  long long operator()(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }
};

IntMatrix commutator(const IntMatrix& x, const IntMatrix& y) {
  IntMatrix z(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      long long xik = x(i, k);
      long long yik = y(i, k);
      if (xik == 0 && yik == 0) continue;
      for (int j = 0; j < x.n; ++j) z(i, j) += xik * y(k, j) - yik * x(k, j);
    }
  return z;
}

IntMatrix transposed(const IntMatrix& x) {
  IntMatrix t(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) t(j, i) = x(i, j);
  return t;
}

// Left multiplication by the unit u of R (s=1), C (s=2) or H (s=4), as an s×s integer block.
std::vector<int> unit_block(int s, int u) {
  if (s == 1) return {1};
  if (s == 2) {
    if (u == 0) return {1, 0, 0, 1};
    return {0, -1, 1, 0};
  }
  // quaternion q = a + b i + c j + d k acting on (1, i, j, k)
  std::array<int, 4> q{0, 0, 0, 0};
  q[static_cast<std::size_t>(u)] = 1;
  int a = q[0], b = q[1], c = q[2], d = q[3];
  return {a, -b, -c, -d,
          b, a, -d, c,
          c, d, a, -b,
          d, -c, b, a};
}

class ModelBuilder {
 public:
  ModelBuilder(int size, int s) : size_(size), s_(s) {}

  IntMatrix zero() const { return IntMatrix(size_ * s_); }

  // m += coef · u·E_ij
  void add(IntMatrix& m, int i, int j, int u, int coef) const {
    auto blk = unit_block(s_, u);
    for (int r = 0; r < s_; ++r)
      for (int c = 0; c < s_; ++c) m(i * s_ + r, j * s_ + c) += coef * blk[static_cast<std::size_t>(r * s_ + c)];
  }

  IntMatrix unit(int i, int j, int u, int coef = 1) const {
    IntMatrix m = zero();
    add(m, i, j, u, coef);
    return m;
  }

  void push(IntMatrix m) { elements_.push_back(std::move(m)); }
  std::vector<IntMatrix>& elements() { return elements_; }
  int size() const { return size_; }

 private:
  int size_;
  int s_;
  std::vector<IntMatrix> elements_;
};

long long frob(const IntMatrix& x, const IntMatrix& y) {
  long long s = 0;
  for (std::size_t i = 0; i < x.a.size(); ++i) s += x.a[i] * y.a[i];
  return s;
}

// Frobenius Gram–Schmidt, each result rescaled to a primitive integer matrix.
std::vector<IntMatrix> orthogonalize(const std::vector<IntMatrix>& in) {
  std::vector<IntMatrix> out;
  for (const auto& v : in) {
    std::vector<Rational> w(v.a.begin(), v.a.end());
    bool touched = false;
    for (const auto& b : out) {
      long long d = frob(v, b);
      if (d == 0) continue;
      touched = true;
      Rational f = Rational(d) / Rational(frob(b, b));
      for (std::size_t i = 0; i < w.size(); ++i)
        if (b.a[i] != 0) w[i] -= f * Rational(b.a[i]);
    }
    IntMatrix m(v.n);
    if (!touched) {
      m = v;
    } else {
      Integer l = 1;
      for (const auto& x : w) l = mp::lcm(l, Integer(mp::denominator(x)));
      Integer g = 0;
      for (const auto& x : w) g = mp::gcd(g, Integer(mp::numerator(x) * (l / mp::denominator(x))));
      if (g == 0) throw ConstructionError("dependent spanning set in matrix model");
      for (std::size_t i = 0; i < w.size(); ++i)
        m.a[i] = static_cast<long long>(Integer(mp::numerator(w[i]) * (l / mp::denominator(w[i])) / g));
    }
    bool nonzero = false;
    for (auto x : m.a) nonzero = nonzero || x != 0;
    if (!nonzero) throw ConstructionError("dependent spanning set in matrix model");
    out.push_back(std::move(m));
  }
  return out;
}

struct MatrixModel {
  std::vector<IntMatrix> basis;
  std::vector<IntMatrix> a_basis;
};

MatrixModel build_model(const RealFormDescriptor& d) {
  MatrixModel model;
  auto diag_traceless = [](ModelBuilder& b, int u) {
    for (int i = 0; i + 1 < b.size(); ++i) {
      IntMatrix m = b.zero();
      b.add(m, i, i, u, 1);
      b.add(m, i + 1, i + 1, u, -1);
      b.push(std::move(m));
    }
  };
  auto real_diagonal_a = [](ModelBuilder& b) {
    std::vector<IntMatrix> a;
    for (int i = 0; i + 1 < b.size(); ++i) {
      IntMatrix m = b.zero();
      b.add(m, i, i, 0, 1);
      b.add(m, i + 1, i + 1, 0, -1);
      a.push_back(std::move(m));
    }
    return a;
  };
  auto signature_a = [](ModelBuilder& b, int p) {
    std::vector<IntMatrix> a;
    for (int i = 0; i < p; ++i) {
      IntMatrix m = b.zero();
      b.add(m, i, p + i, 0, 1);
      b.add(m, p + i, i, 0, 1);
      a.push_back(std::move(m));
    }
    return a;
  };
  // X^* η + η X = 0 with η = diag(I_p, −I_q), scalar units u over a skew field with block size s.
  auto unitary_family = [](ModelBuilder& b, int p, int s, bool traceless) {
    const int n = b.size();
    auto same_block = [&](int i, int j) { return (i < p) == (j < p); };
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        for (int u = 0; u < s; ++u) {
          IntMatrix m = b.zero();
          bool real_unit = u == 0;
          // real unit: antisymmetric in a block, symmetric across; imaginary units the other way round
          int sign = same_block(i, j) == real_unit ? -1 : 1;
          b.add(m, i, j, u, 1);
          b.add(m, j, i, u, sign);
          b.push(std::move(m));
        }
      }
    if (s == 1) return;
    if (traceless) {
      for (int i = 0; i + 1 < n; ++i) {
        IntMatrix m = b.zero();
        b.add(m, i, i, 1, 1);
        b.add(m, i + 1, i + 1, 1, -1);
        b.push(std::move(m));
      }
    } else {
      for (int i = 0; i < n; ++i)
        for (int u = 1; u < s; ++u) b.push(b.unit(i, i, u));
    }
  };

  switch (d.family) {
    case RealFormFamily::sl_real:
    case RealFormFamily::sl_complex:
    case RealFormFamily::sl_quaternion: {
      int s = d.family == RealFormFamily::sl_real ? 1 : d.family == RealFormFamily::sl_complex ? 2 : 4;
      ModelBuilder b(d.n, s);
      for (int i = 0; i < d.n; ++i)
        for (int j = 0; j < d.n; ++j)
          if (i != j)
            for (int u = 0; u < s; ++u) b.push(b.unit(i, j, u));
      diag_traceless(b, 0);
      if (s == 2) diag_traceless(b, 1);
      if (s == 4)
        for (int i = 0; i < d.n; ++i)
          for (int u = 1; u < 4; ++u) b.push(b.unit(i, i, u));
      model.a_basis = real_diagonal_a(b);
      model.basis = std::move(b.elements());
      break;
    }
    case RealFormFamily::so_pq:
    case RealFormFamily::su_pq:
    case RealFormFamily::sp_pq: {
      int s = d.family == RealFormFamily::so_pq ? 1 : d.family == RealFormFamily::su_pq ? 2 : 4;
      ModelBuilder b(d.p + d.q, s);
      unitary_family(b, d.p, s, d.family == RealFormFamily::su_pq);
      model.a_basis = signature_a(b, d.p);
      model.basis = std::move(b.elements());
      break;
    }
    case RealFormFamily::so_complex: {
      ModelBuilder b(d.n, 2);
      for (int i = 0; i < d.n; ++i)
        for (int j = i + 1; j < d.n; ++j)
          for (int u = 0; u < 2; ++u) {
            IntMatrix m = b.zero();
            b.add(m, i, j, u, 1);
            b.add(m, j, i, u, -1);
            b.push(std::move(m));
          }
      for (int i = 0; i + 1 < d.n; i += 2) {
        IntMatrix m = b.zero();
        b.add(m, i, i + 1, 1, 1);
        b.add(m, i + 1, i, 1, -1);
        model.a_basis.push_back(std::move(m));
      }
      model.basis = std::move(b.elements());
      break;
    }
    case RealFormFamily::split_from_rootsystem:
      throw UnsupportedRealForm("split forms use the Chevalley construction");
  }
  model.basis = orthogonalize(model.basis);
  return model;
}

// Coordinates in a Frobenius-orthogonal basis; nullopt if x is outside the span.
std::optional<Vec<Rational>> model_coordinates(const std::vector<IntMatrix>& basis,
                                               const std::vector<long long>& norms, const IntMatrix& x) {
  Vec<Rational> c(basis.size());
  Rational captured = 0;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    long long d = frob(x, basis[k]);
    if (d == 0) continue;
    c[k] = Rational(d) / Rational(norms[k]);
    captured += c[k] * Rational(d);
  }
  if (captured != Rational(frob(x, x))) return std::nullopt;
  return c;
}

Matrix<Rational> bthetagram(const Matrix<Rational>& killing, const Matrix<Rational>& theta) {
  return scaled(killing * theta, Rational(-1));
}

void check_cartan_data(CartanPackage& pkg) {
  const std::size_t n = pkg.g.dim();
  // θ² = id and θ an automorphism
  if (!(pkg.theta * pkg.theta == Matrix<Rational>::identity(n))) throw ConstructionError("θ is not an involution");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec<Rational> lhs = pkg.theta * pkg.g.bracket(basis_vector<Rational>(n, i), basis_vector<Rational>(n, j));
      Vec<Rational> rhs = pkg.g.bracket(pkg.theta.column(i), pkg.theta.column(j));
      if (lhs != rhs) throw ConstructionError("θ is not a bracket automorphism");
    }
  for (const auto& h : pkg.a_basis) {
    if (pkg.theta * h != Rational(-1) * h) throw MaximalityFailure("𝔞 is not contained in 𝔭");
    for (const auto& h2 : pkg.a_basis)
      if (!is_zero(pkg.g.bracket(h, h2))) throw MaximalityFailure("𝔞 is not abelian");
  }
  // centralizer of 𝔞 inside 𝔭 must be 𝔞 itself
  const std::size_t r = pkg.a_basis.size();
  Matrix<Rational> sys((r + 1) * n, n);
  for (std::size_t a = 0; a < r; ++a) {
    Matrix<Rational> ad = ad_matrix(pkg.g, pkg.a_basis[a]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sys(a * n + i, j) = ad(i, j);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sys(r * n + i, j) = pkg.theta(i, j) + (i == j ? 1 : 0);
  if (nullspace(sys).size() != r) throw MaximalityFailure("candidate 𝔞 is not maximal abelian in 𝔭");
}

}  // namespace

std::string RealFormDescriptor::describe() const {
  switch (family) {
    case RealFormFamily::sl_real: return "sl(" + std::to_string(n) + ",R)";
    case RealFormFamily::sl_complex: return "sl(" + std::to_string(n) + ",C)";
    case RealFormFamily::sl_quaternion: return "sl(" + std::to_string(n) + ",H)";
    case RealFormFamily::su_pq: return "su(" + std::to_string(q) + "," + std::to_string(p) + ")";
    case RealFormFamily::so_pq: return "so(" + std::to_string(p) + "," + std::to_string(q) + ")";
    case RealFormFamily::sp_pq: return "sp(" + std::to_string(q) + "," + std::to_string(p) + ")";
    case RealFormFamily::so_complex: return "so(" + std::to_string(n) + ",C)";
    case RealFormFamily::split_from_rootsystem: return "split " + (simple ? simple->label() : std::string("?"));
  }
  return "?";
}

std::vector<std::string> catalog_space_ids() {
  return {"sl2r", "sl3r", "sl3c", "sl3h", "sl4r", "sl4c", "sl4h", "sl5c",
          "so23", "so24", "so25", "so26", "so27", "so28", "so5c",
          "so31", "so41", "so51",
          "su21", "su31", "su41", "su23", "sp21", "sp31",
          "split:A1", "split:A2", "split:A3", "split:A4", "split:B2", "split:B3", "split:B4",
          "split:C3", "split:C4", "split:D4", "split:G2"};
}

RealFormDescriptor descriptor_for(const std::string& id) {
  RealFormDescriptor d;
  auto digit = [&](std::size_t pos) -> int {
    if (pos >= id.size() || id[pos] < '0' || id[pos] > '9') throw UnsupportedRealForm(id);
    return id[pos] - '0';
  };
  if (id.rfind("split:", 0) == 0) {
    std::string label = id.substr(6);
    if (label.size() != 2) throw UnsupportedRealForm(id);
    RootKind kind;
    switch (label[0]) {
      case 'A': kind = RootKind::A; break;
      case 'B': kind = RootKind::B; break;
      case 'C': kind = RootKind::C; break;
      case 'D': kind = RootKind::D; break;
      case 'G': kind = RootKind::G2; break;
      default: throw UnsupportedRealForm(id);
    }
    int rank = label[1] - '0';
    if (kind == RootKind::C && rank < 3) throw UnsupportedRealForm(id + " (use split:B2)");
    d.family = RealFormFamily::split_from_rootsystem;
    try {
      d.simple = SimpleSystem::make(kind, rank);
    } catch (const UnsupportedSystem&) {
      throw UnsupportedRealForm(id);
    }
    return d;
  }
  if (id.size() == 4 && id.rfind("sl", 0) == 0) {
    d.n = digit(2);
    switch (id[3]) {
      case 'r': d.family = RealFormFamily::sl_real; break;
      case 'c': d.family = RealFormFamily::sl_complex; break;
      case 'h': d.family = RealFormFamily::sl_quaternion; break;
      default: throw UnsupportedRealForm(id);
    }
    bool ok = (d.family == RealFormFamily::sl_real && d.n >= 2 && d.n <= 5) ||
              (d.family == RealFormFamily::sl_complex && d.n >= 2 && d.n <= 5) ||
              (d.family == RealFormFamily::sl_quaternion && d.n >= 2 && d.n <= 4);
    if (!ok) throw UnsupportedRealForm(id);
    return d;
  }
  if (id == "so5c") {
    d.family = RealFormFamily::so_complex;
    d.n = 5;
    return d;
  }
  if (id.size() == 4 && (id.rfind("so", 0) == 0 || id.rfind("su", 0) == 0 || id.rfind("sp", 0) == 0)) {
    int a = digit(2), b = digit(3);
    d.p = std::min(a, b);
    d.q = std::max(a, b);
    if (id[1] == 'o') {
      d.family = RealFormFamily::so_pq;
      // so(n,1) for real hyperbolic space, so(2,q) for the B2 family
      bool ok = (d.p == 1 && d.q >= 3 && d.q <= 6) || (d.p == 2 && d.q >= 3 && d.q <= 8);
      if (!ok) throw UnsupportedRealForm(id);
    } else if (id[1] == 'u') {
      d.family = RealFormFamily::su_pq;
      bool ok = (d.p == 1 && d.q >= 2 && d.q <= 4) || (d.p == 2 && d.q == 3);
      if (!ok) throw UnsupportedRealForm(id);
    } else {
      d.family = RealFormFamily::sp_pq;
      bool ok = d.p == 1 && d.q >= 2 && d.q <= 3;
      if (!ok) throw UnsupportedRealForm(id);
    }
    return d;
  }
  throw UnsupportedRealForm(id);
}

CartanPackage build_matrix_realization(const RealFormDescriptor& desc) {
  MatrixModel model = build_model(desc);
  const std::size_t n = model.basis.size();
  std::vector<long long> norms;
  for (const auto& b : model.basis) norms.push_back(frob(b, b));

  std::vector<StructureConstant<Rational>> cs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      IntMatrix z = commutator(model.basis[i], model.basis[j]);
      auto c = model_coordinates(model.basis, norms, z);
      if (!c) throw ConstructionError("matrix model not closed under commutators: " + desc.describe());
      for (std::size_t k = 0; k < n; ++k)
        if (!(*c)[k].is_zero()) cs.push_back({i, j, k, (*c)[k]});
    }
  Matrix<Rational> theta(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix t = transposed(model.basis[j]);
    for (auto& x : t.a) x = -x;
    auto c = model_coordinates(model.basis, norms, t);
    if (!c) throw ConstructionError("model not closed under −transpose: " + desc.describe());
    theta.set_column(j, *c);
  }
  CartanPackage pkg;
  pkg.descriptor = desc;
  for (const auto& h : model.a_basis) {
    auto c = model_coordinates(model.basis, norms, h);
    if (!c) throw MaximalityFailure("𝔞 candidate outside the model");
    pkg.a_basis.push_back(*c);
  }
  // provisional Gram to evaluate the Killing form from structure constants
  MetricLieAlgebra<Rational> raw(n, cs, Matrix<Rational>::identity(n));
  pkg.killing = killing_form(raw);
  pkg.theta = theta;
  pkg.g = MetricLieAlgebra<Rational>(n, cs, bthetagram(pkg.killing, theta));
  check_cartan_data(pkg);
  return pkg;
}

CartanPackage build_realization(const RealFormDescriptor& desc) {
  if (desc.family == RealFormFamily::split_from_rootsystem) {
    if (!desc.simple) throw UnsupportedRealForm("split descriptor without a simple system");
    return build_split_realization(*desc.simple);
  }
  return build_matrix_realization(desc);
}

namespace detail {
Matrix<Rational> btheta_from(const Matrix<Rational>& killing, const Matrix<Rational>& theta) {
  return bthetagram(killing, theta);
}
void validate_cartan_package(CartanPackage& pkg) { check_cartan_data(pkg); }
}  // namespace detail

}  // namespace nilsol
