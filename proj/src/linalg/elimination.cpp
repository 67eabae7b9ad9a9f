// Fraction-free sparse elimination over Z.
//
// Rows are cleared of denominators and kept primitive. Columns are processed
// in increasing order; every row whose leading column equals the current
// column is reduced against one pivot row. Those reductions are independent,
// which is what the parallel variant distributes. Both variants perform the
// same arithmetic and return identical results.

#include <algorithm>
#include <map>

#include "odeinv/linalg/sparse.hpp"

namespace odeinv::linalg {

namespace {

struct IEntry {
  int col;
  mpz_class val;
};
using IRow = std::vector<IEntry>;

void make_primitive(IRow& r) {
  if (r.empty()) return;
  mpz_class g = 0;
  for (const auto& e : r) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.val.get_mpz_t());
    if (g == 1) break;
  }
  if (r.front().val < 0) g = -g;
  if (g != 1) {
    for (auto& e : r) mpz_divexact(e.val.get_mpz_t(), e.val.get_mpz_t(), g.get_mpz_t());
  }
}

IRow to_int(const SparseRow& r) {
  mpz_class l = 1;
  for (const auto& e : r) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.val.get_den_mpz_t());
  IRow out;
  out.reserve(r.size());
  for (const auto& e : r) {
    mpz_class v = e.val.get_num() * (l / e.val.get_den());
    out.push_back({e.col, std::move(v)});
  }
  make_primitive(out);
  return out;
}

SparseRow to_rational(const IRow& r) {
  SparseRow out;
  out.reserve(r.size());
  for (const auto& e : r) out.push_back({e.col, mpq_class(e.val)});
  return out;
}

const mpz_class* value_at(const IRow& r, int col) {
  auto it = std::lower_bound(r.begin(), r.end(), col, [](const IEntry& e, int c) { return e.col < c; });
  if (it != r.end() && it->col == col) return &it->val;
  return nullptr;
}

// r <- (a/g) r - (b/g) p, where a = p[col], b = r[col], g = gcd(a, b).
void eliminate(IRow& r, const IRow& p, int col) {
  const mpz_class* bp = value_at(r, col);
  if (bp == nullptr) return;
  const mpz_class& a = *value_at(p, col);
  mpz_class g = gcd(a, *bp);
  mpz_class sa = a / g;
  mpz_class sb = *bp / g;
  IRow out;
  out.reserve(r.size() + p.size());
  std::size_t i = 0;
  std::size_t j = 0;
  mpz_class v;
  while (i < r.size() || j < p.size()) {
    if (j == p.size() || (i < r.size() && r[i].col < p[j].col)) {
      out.push_back({r[i].col, sa * r[i].val});
      ++i;
    } else if (i == r.size() || p[j].col < r[i].col) {
      out.push_back({p[j].col, -sb * p[j].val});
      ++j;
    } else {
      v = sa * r[i].val - sb * p[j].val;
      if (v != 0) out.push_back({r[i].col, v});
      ++i;
      ++j;
    }
  }
  make_primitive(out);
  r = std::move(out);
}

constexpr std::size_t kParallelThreshold = 4;

template <class Body>
void for_each_index(std::size_t n, Exec exec, Body&& body) {
  if (exec == Exec::Parallel && n >= kParallelThreshold) {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < n; ++i) body(i);
  } else {
    for (std::size_t i = 0; i < n; ++i) body(i);
  }
}

struct IntEchelon {
  std::vector<IRow> rows;
  std::vector<int> pivots;
};

IntEchelon int_echelon(const SparseMatrix& a, Exec exec, bool reduced) {
  std::vector<IRow> work;
  work.reserve(static_cast<std::size_t>(a.rows()));
  for (const auto& r : a.row_data()) {
    if (!r.empty()) work.push_back(to_int(r));
  }
  // Buckets of row indices keyed by leading column.
  std::map<int, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < work.size(); ++i) buckets[work[i].front().col].push_back(i);

  IntEchelon out;
  while (!buckets.empty()) {
    auto node = buckets.extract(buckets.begin());
    const int col = node.key();
    auto& group = node.mapped();
    std::sort(group.begin(), group.end());
    std::size_t best = 0;
    for (std::size_t g = 1; g < group.size(); ++g) {
      if (work[group[g]].size() < work[group[best]].size()) best = g;
    }
    const std::size_t piv = group[best];
    group.erase(group.begin() + static_cast<std::ptrdiff_t>(best));
    for_each_index(group.size(), exec, [&](std::size_t g) { eliminate(work[group[g]], work[piv], col); });
    for (std::size_t idx : group) {
      if (!work[idx].empty()) buckets[work[idx].front().col].push_back(idx);
    }
    out.rows.push_back(std::move(work[piv]));
    out.pivots.push_back(col);
  }

  if (reduced) {
    for (std::size_t i = out.rows.size(); i-- > 0;) {
      const int col = out.pivots[i];
      for_each_index(i, exec, [&](std::size_t j) { eliminate(out.rows[j], out.rows[i], col); });
    }
  }
  return out;
}

}  // namespace

Echelon echelon(const SparseMatrix& a, Exec exec, bool reduced) {
  auto e = int_echelon(a, exec, reduced);
  Echelon out;
  out.pivots = std::move(e.pivots);
  out.rows.reserve(e.rows.size());
  for (const auto& r : e.rows) out.rows.push_back(to_rational(r));
  return out;
}

std::size_t rank(const SparseMatrix& a, Exec exec) {
  // Eliminating the shorter side is cheaper and gives the same rank.
  if (a.rows() > 2 * a.cols()) return int_echelon(a.transpose(), exec, false).rows.size();
  return int_echelon(a, exec, false).rows.size();
}

std::vector<SparseRow> kernel(const SparseMatrix& a, Exec exec) {
  auto e = int_echelon(a, exec, true);
  const auto n = static_cast<std::size_t>(a.cols());
  std::vector<char> is_pivot(n, 0);
  for (int p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = 1;
  // For every free column, the rows mentioning it.
  std::vector<std::vector<std::size_t>> mentions(n);
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    for (const auto& x : e.rows[i]) {
      if (!is_pivot[static_cast<std::size_t>(x.col)]) mentions[static_cast<std::size_t>(x.col)].push_back(i);
    }
  }
  std::vector<SparseRow> out;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    SparseRow v;
    for (std::size_t i : mentions[f]) {
      const auto& row = e.rows[i];
      mpq_class val(*value_at(row, static_cast<int>(f)), row.front().val);
      val.canonicalize();
      v.push_back({e.pivots[i], -val});
    }
    v.push_back({static_cast<int>(f), 1});
    std::sort(v.begin(), v.end(), [](const Entry& x, const Entry& y) { return x.col < y.col; });
    out.push_back(std::move(v));
  }
  return out;
}

bool in_span(const Echelon& basis, const SparseRow& v) {
  std::map<int, std::size_t> by_pivot;
  for (std::size_t i = 0; i < basis.pivots.size(); ++i) by_pivot[basis.pivots[i]] = i;
  IRow w = to_int(v);
  while (!w.empty()) {
    auto it = by_pivot.find(w.front().col);
    if (it == by_pivot.end()) return false;
    eliminate(w, to_int(basis.rows[it->second]), it->first);
  }
  return true;
}

}  // namespace odeinv::linalg
