#include "odeinv/liealg/liealg.hpp"

#include <algorithm>
#include <map>

#include "odeinv/error.hpp"

namespace odeinv {

namespace {

mpq_class factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return mpq_class(f);
}

void add(std::map<int, mpq_class>& acc, int p, const mpq_class& c) {
  if (c == 0) return;
  acc[p] += c;
  if (acc[p] == 0) acc.erase(p);
}

linalg::SparseRow to_row(const std::map<int, mpq_class>& acc) {
  linalg::SparseRow r;
  for (const auto& [p, c] : acc) r.push_back({p, c});
  return r;
}

}  // namespace

int GradedLieAlgebra::e(int i, int j) const { return 3 + (i - 1) * m_ + (j - 1); }

int GradedLieAlgebra::v(int a, int i) const { return 3 + m_ * m_ + a * m_ + (i - 1); }

GradedLieAlgebra GradedLieAlgebra::build(int k, int m) {
  if (k < 1 || m < 1) throw ShapeError("g(k, m) needs k >= 1 and m >= 1");
  GradedLieAlgebra g;
  g.k_ = k;
  g.m_ = m;
  g.basis_.push_back({BasisKind::X, 0, 0, 0, "x", -1, 1});
  g.basis_.push_back({BasisKind::H, 0, 0, 0, "h", 0, 2});
  g.basis_.push_back({BasisKind::Y, 0, 0, 0, "y", 1, 1});
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= m; ++j) {
      g.basis_.push_back({BasisKind::E, i, j, 0, "e^" + std::to_string(i) + "_" + std::to_string(j), 0, 1});
    }
  }
  for (int a = 0; a <= k; ++a) {
    for (int i = 1; i <= m; ++i) {
      g.basis_.push_back({BasisKind::V, i, 0, a, "v^" + std::to_string(a) + "*e_" + std::to_string(i),
                          -(k + 1 - a), factorial(k - a) / factorial(a)});
    }
  }

  const int n = g.dim();
  g.table_.assign(static_cast<std::size_t>(n * n), {});
  // Brackets [p, q] for p from the reductive part; the rest follows by
  // antisymmetry or vanishes.
  auto set = [&](int p, int q, const std::map<int, mpq_class>& acc) {
    auto r = to_row(acc);
    g.table_[static_cast<std::size_t>(p * n + q)] = r;
    for (auto& x : r) x.val = -x.val;
    g.table_[static_cast<std::size_t>(q * n + p)] = r;
  };
  // sl(2): matrix commutators of x = [[0,0],[1,0]], y = [[0,1],[0,0]], h = diag(-1, 1).
  set(g.x(), g.y(), {{g.h(), 1}});
  set(g.h(), g.x(), {{g.x(), 2}});
  set(g.h(), g.y(), {{g.y(), -2}});
  // gl(m): e^i_j acts as the matrix unit E_{ji}.
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= m; ++j) {
      for (int p = 1; p <= m; ++p) {
        for (int q = 1; q <= m; ++q) {
          if (g.e(i, j) >= g.e(p, q)) continue;
          std::map<int, mpq_class> acc;
          if (i == q) add(acc, g.e(p, j), 1);
          if (j == p) add(acc, g.e(i, q), -1);
          set(g.e(i, j), g.e(p, q), acc);
        }
      }
    }
  }
  // Action on V.
  for (int a = 0; a <= k; ++a) {
    for (int i = 1; i <= m; ++i) {
      const int t = g.v(a, i);
      std::map<int, mpq_class> acc;
      if (a > 0) add(acc, g.v(a - 1, i), 1);
      set(g.x(), t, acc);
      acc.clear();
      if (a < k) add(acc, g.v(a + 1, i), (k - a) * (a + 1));
      set(g.y(), t, acc);
      acc.clear();
      add(acc, t, k - 2 * a);
      set(g.h(), t, acc);
      for (int p = 1; p <= m; ++p) {
        for (int q = 1; q <= m; ++q) {
          acc.clear();
          if (p == i) add(acc, g.v(a, q), 1);
          set(g.e(p, q), t, acc);
        }
      }
    }
  }
  return g;
}

const linalg::SparseRow& GradedLieAlgebra::bracket(int p, int q) const {
  return table_[static_cast<std::size_t>(p * dim() + q)];
}

linalg::SparseRow GradedLieAlgebra::bracket(const linalg::SparseRow& a, const linalg::SparseRow& b) const {
  std::map<int, mpq_class> acc;
  for (const auto& u : a) {
    for (const auto& w : b) {
      for (const auto& t : bracket(u.col, w.col)) add(acc, t.col, u.val * w.val * t.val);
    }
  }
  return to_row(acc);
}

LieElement GradedLieAlgebra::bracket(const LieElement& a, const LieElement& b) const {
  if (a.k != b.k || a.m != b.m || a.k != k_ || a.m != m_) {
    throw ShapeError("bracket of elements from different algebras");
  }
  return {k_, m_, bracket(a.coeffs, b.coeffs)};
}

LieElement GradedLieAlgebra::basis_element(int p) const { return {k_, m_, {{p, 1}}}; }

std::vector<int> GradedLieAlgebra::negative_part() const {
  std::vector<int> out{x()};
  auto vs = v_indices();
  out.insert(out.end(), vs.begin(), vs.end());
  return out;
}

std::vector<int> GradedLieAlgebra::v_indices() const {
  std::vector<int> out;
  for (int p = 0; p < dim(); ++p) {
    if (is_v(p)) out.push_back(p);
  }
  return out;
}

std::vector<int> GradedLieAlgebra::reductive_indices() const {
  std::vector<int> out;
  for (int p = 0; p < dim(); ++p) {
    if (!is_v(p)) out.push_back(p);
  }
  return out;
}

int GradedLieAlgebra::transpose_index(int p) const {
  const auto& b = element(p);
  switch (b.kind) {
    case BasisKind::X:
      return y();
    case BasisKind::Y:
      return x();
    case BasisKind::H:
      return h();
    case BasisKind::E:
      return e(b.j, b.i);
    case BasisKind::V:
      break;
  }
  throw ShapeError("transpose is defined on sl(2) x gl(m) only");
}

nlohmann::json to_json(const GradedLieAlgebra& g) {
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& b : g.basis()) {
    basis.push_back({{"name", b.name}, {"degree", b.degree}, {"gram", b.gram.get_str()}});
  }
  nlohmann::json table = nlohmann::json::object();
  for (int p = 0; p < g.dim(); ++p) {
    for (int q = p + 1; q < g.dim(); ++q) {
      const auto& r = g.bracket(p, q);
      if (r.empty()) continue;
      nlohmann::json val = nlohmann::json::object();
      for (const auto& t : r) val[g.element(t.col).name] = t.val.get_str();
      table["[" + g.element(p).name + "," + g.element(q).name + "]"] = val;
    }
  }
  return {{"k", g.k()}, {"m", g.m()}, {"dim", g.dim()}, {"basis", basis}, {"brackets", table}};
}

}  // namespace odeinv
