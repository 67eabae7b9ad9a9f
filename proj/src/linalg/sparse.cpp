#include "odeinv/linalg/sparse.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace odeinv::linalg {

SparseMatrix::SparseMatrix(int rows, int cols) : cols_(cols), rows_(static_cast<std::size_t>(rows)) {}

SparseMatrix SparseMatrix::from_triplets(int rows, int cols, std::vector<Triplet> entries) {
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  SparseMatrix m(rows, cols);
  for (std::size_t i = 0; i < entries.size();) {
    const auto& t = entries[i];
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
      throw std::out_of_range("triplet outside matrix");
    }
    mpq_class sum = 0;
    std::size_t j = i;
    for (; j < entries.size() && entries[j].row == t.row && entries[j].col == t.col; ++j) {
      sum += entries[j].val;
    }
    if (sum != 0) m.rows_[static_cast<std::size_t>(t.row)].push_back({t.col, sum});
    i = j;
  }
  return m;
}

SparseMatrix SparseMatrix::identity(int n) {
  SparseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.rows_[static_cast<std::size_t>(i)].push_back({i, 1});
  return m;
}

SparseMatrix SparseMatrix::from_rows(int cols, std::vector<SparseRow> rows) {
  SparseMatrix m;
  m.cols_ = cols;
  m.rows_ = std::move(rows);
  return m;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

mpq_class SparseMatrix::at(int r, int c) const {
  const auto& row = rows_[static_cast<std::size_t>(r)];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const Entry& e, int col) { return e.col < col; });
  if (it != row.end() && it->col == c) return it->val;
  return 0;
}

bool SparseMatrix::is_zero() const {
  return std::all_of(rows_.begin(), rows_.end(), [](const SparseRow& r) { return r.empty(); });
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows());
  for (int r = 0; r < rows(); ++r) {
    for (const auto& e : rows_[static_cast<std::size_t>(r)]) {
      t.rows_[static_cast<std::size_t>(e.col)].push_back({r, e.val});
    }
  }
  return t;
}

SparseMatrix SparseMatrix::select_rows(const std::vector<int>& idx) const {
  SparseMatrix m(static_cast<int>(idx.size()), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i) m.rows_[i] = rows_[static_cast<std::size_t>(idx[i])];
  return m;
}

SparseMatrix SparseMatrix::select_cols(const std::vector<int>& idx) const {
  std::vector<int> where(static_cast<std::size_t>(cols_), -1);
  for (std::size_t i = 0; i < idx.size(); ++i) where[static_cast<std::size_t>(idx[i])] = static_cast<int>(i);
  SparseMatrix m(rows(), static_cast<int>(idx.size()));
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (const auto& e : rows_[r]) {
      int c = where[static_cast<std::size_t>(e.col)];
      if (c >= 0) m.rows_[r].push_back({c, e.val});
    }
    std::sort(m.rows_[r].begin(), m.rows_[r].end(),
              [](const Entry& a, const Entry& b) { return a.col < b.col; });
  }
  return m;
}

SparseMatrix SparseMatrix::vstack(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols_ != b.cols_) throw std::invalid_argument("vstack: column counts differ");
  SparseMatrix m = a;
  m.rows_.insert(m.rows_.end(), b.rows_.begin(), b.rows_.end());
  return m;
}

SparseMatrix SparseMatrix::hstack(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row counts differ");
  SparseMatrix m(a.rows(), a.cols_ + b.cols_);
  for (std::size_t r = 0; r < a.rows_.size(); ++r) {
    m.rows_[r] = a.rows_[r];
    for (const auto& e : b.rows_[r]) m.rows_[r].push_back({e.col + a.cols_, e.val});
  }
  return m;
}

SparseRow combine(const SparseRow& a, const mpq_class& s, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].col < b[j].col)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].col < a[i].col) {
      out.push_back({b[j].col, s * b[j].val});
      ++j;
    } else {
      mpq_class v = a[i].val + s * b[j].val;
      if (v != 0) out.push_back({a[i].col, v});
      ++i;
      ++j;
    }
  }
  return out;
}

mpq_class dot(const SparseRow& a, const SparseRow& b) {
  mpq_class acc = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].col < b[j].col) {
      ++i;
    } else if (b[j].col < a[i].col) {
      ++j;
    } else {
      acc += a[i++].val * b[j++].val;
    }
  }
  return acc;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols_ != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
  SparseMatrix m(a.rows(), b.cols_);
  std::vector<mpq_class> acc(static_cast<std::size_t>(b.cols_));
  std::vector<char> used(static_cast<std::size_t>(b.cols_), 0);
  std::vector<int> touched;
  for (std::size_t r = 0; r < a.rows_.size(); ++r) {
    touched.clear();
    for (const auto& e : a.rows_[r]) {
      for (const auto& f : b.rows_[static_cast<std::size_t>(e.col)]) {
        auto c = static_cast<std::size_t>(f.col);
        if (!used[c]) {
          used[c] = 1;
          acc[c] = 0;
          touched.push_back(f.col);
        }
        acc[c] += e.val * f.val;
      }
    }
    std::sort(touched.begin(), touched.end());
    for (int c : touched) {
      auto uc = static_cast<std::size_t>(c);
      if (acc[uc] != 0) m.rows_[r].push_back({c, acc[uc]});
      used[uc] = 0;
    }
  }
  return m;
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
  SparseMatrix m(a.rows(), a.cols_);
  for (std::size_t r = 0; r < a.rows_.size(); ++r) m.rows_[r] = combine(a.rows_[r], 1, b.rows_[r]);
  return m;
}

SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference: shape mismatch");
  SparseMatrix m(a.rows(), a.cols_);
  for (std::size_t r = 0; r < a.rows_.size(); ++r) m.rows_[r] = combine(a.rows_[r], -1, b.rows_[r]);
  return m;
}

SparseMatrix operator*(const mpq_class& s, const SparseMatrix& a) {
  SparseMatrix m(a.rows(), a.cols_);
  if (s == 0) return m;
  for (std::size_t r = 0; r < a.rows_.size(); ++r) {
    for (const auto& e : a.rows_[r]) m.rows_[r].push_back({e.col, s * e.val});
  }
  return m;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols_ != b.cols_ || a.rows_.size() != b.rows_.size()) return false;
  for (std::size_t r = 0; r < a.rows_.size(); ++r) {
    const auto& x = a.rows_[r];
    const auto& y = b.rows_[r];
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].col != y[i].col || x[i].val != y[i].val) return false;
    }
  }
  return true;
}

SparseMatrix SparseMatrix::scaled(const std::vector<mpq_class>& left,
                                  const std::vector<mpq_class>& right) const {
  SparseMatrix m(rows(), cols_);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (const auto& e : rows_[r]) {
      mpq_class v = left[r] * e.val * right[static_cast<std::size_t>(e.col)];
      if (v != 0) m.rows_[r].push_back({e.col, v});
    }
  }
  return m;
}

SparseMatrix rows_matrix(int cols, const std::vector<SparseRow>& vectors) {
  return SparseMatrix::from_rows(cols, vectors);
}

SparseMatrix cols_matrix(int rows, const std::vector<SparseRow>& vectors) {
  return SparseMatrix::from_rows(rows, vectors).transpose();
}

}  // namespace odeinv::linalg
