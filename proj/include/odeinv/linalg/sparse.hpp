#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <utility>
#include <vector>

namespace odeinv::linalg {

struct Entry {
  int col = 0;
  mpq_class val;
  friend bool operator==(const Entry&, const Entry&) = default;
};
/// Sorted by column, no explicit zeros.
using SparseRow = std::vector<Entry>;

struct Triplet {
  int row = 0;
  int col = 0;
  mpq_class val;
};

/// Exact rational sparse matrix stored by rows.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols);
  /// Duplicate positions are summed.
  static SparseMatrix from_triplets(int rows, int cols, std::vector<Triplet> entries);
  static SparseMatrix identity(int n);
  static SparseMatrix from_rows(int cols, std::vector<SparseRow> rows);

  int rows() const noexcept { return static_cast<int>(rows_.size()); }
  int cols() const noexcept { return cols_; }
  const SparseRow& row(int r) const { return rows_[static_cast<std::size_t>(r)]; }
  const std::vector<SparseRow>& row_data() const noexcept { return rows_; }
  std::size_t nonzeros() const;
  mpq_class at(int r, int c) const;
  bool is_zero() const;

  SparseMatrix transpose() const;
  SparseMatrix select_rows(const std::vector<int>& idx) const;
  SparseMatrix select_cols(const std::vector<int>& idx) const;
  /// Rows of a followed by rows of b.
  static SparseMatrix vstack(const SparseMatrix& a, const SparseMatrix& b);
  /// Columns of a followed by columns of b.
  static SparseMatrix hstack(const SparseMatrix& a, const SparseMatrix& b);

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator*(const mpq_class& s, const SparseMatrix& a);
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

  /// diag(left) * A * diag(right).
  SparseMatrix scaled(const std::vector<mpq_class>& left, const std::vector<mpq_class>& right) const;

 private:
  int cols_ = 0;
  std::vector<SparseRow> rows_;
};

SparseRow combine(const SparseRow& a, const mpq_class& s, const SparseRow& b);  // a + s*b
mpq_class dot(const SparseRow& a, const SparseRow& b);

enum class Exec { Serial, Parallel };

/// Row echelon form with primitive integer rows. pivots[i] is the leading
/// column of rows[i]; pivots are strictly increasing. With `reduced` set the
/// pivot columns are cleared from every other row (Gauss-Jordan).
struct Echelon {
  std::vector<SparseRow> rows;
  std::vector<int> pivots;
};

Echelon echelon(const SparseMatrix& a, Exec exec = Exec::Parallel, bool reduced = false);
std::size_t rank(const SparseMatrix& a, Exec exec = Exec::Parallel);
/// Basis of {v : a v = 0}, one vector per free column, each with a 1 in its
/// free column.
std::vector<SparseRow> kernel(const SparseMatrix& a, Exec exec = Exec::Parallel);
/// True iff v lies in the row space of an echelon form.
bool in_span(const Echelon& basis, const SparseRow& v);

/// Matrix whose rows are the given vectors.
SparseMatrix rows_matrix(int cols, const std::vector<SparseRow>& vectors);
/// Matrix whose columns are the given vectors.
SparseMatrix cols_matrix(int rows, const std::vector<SparseRow>& vectors);

}  // namespace odeinv::linalg
