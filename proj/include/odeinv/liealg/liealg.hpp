#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "json.hpp"
#include "odeinv/linalg/sparse.hpp"

namespace odeinv {

enum class BasisKind { X, H, Y, E, V };

/// x, h, y; e^i_j (1-based i, j); v^a (x) e_i (0 <= a <= k, 1-based i).
struct BasisElement {
  BasisKind kind = BasisKind::X;
  int i = 0;
  int j = 0;
  int a = 0;
  std::string name;
  int degree = 0;
  mpq_class gram;
};

/// An element of a specific g(k, m), as coefficients on the basis.
struct LieElement {
  int k = 0;
  int m = 0;
  linalg::SparseRow coeffs;
};

/// g(k, m) = (sl(2) x gl(m)) + V_k (x) R^m with its grading and the diagonal
/// scalar product. Immutable after construction.
class GradedLieAlgebra {
 public:
  static GradedLieAlgebra build(int k, int m);

  int k() const noexcept { return k_; }
  int m() const noexcept { return m_; }
  int dim() const noexcept { return static_cast<int>(basis_.size()); }
  const std::vector<BasisElement>& basis() const noexcept { return basis_; }
  const BasisElement& element(int p) const { return basis_[static_cast<std::size_t>(p)]; }
  int degree(int p) const { return element(p).degree; }
  const mpq_class& gram(int p) const { return element(p).gram; }

  int x() const noexcept { return 0; }
  int h() const noexcept { return 1; }
  int y() const noexcept { return 2; }
  int e(int i, int j) const;
  int v(int a, int i) const;
  bool is_v(int p) const { return element(p).kind == BasisKind::V; }

  /// [b_p, b_q] on the basis.
  const linalg::SparseRow& bracket(int p, int q) const;
  linalg::SparseRow bracket(const linalg::SparseRow& a, const linalg::SparseRow& b) const;
  /// Throws ShapeError if the elements belong to different algebras.
  LieElement bracket(const LieElement& a, const LieElement& b) const;
  LieElement basis_element(int p) const;

  /// Indices of g_- = Rx + V, in basis order.
  std::vector<int> negative_part() const;
  /// Indices of V.
  std::vector<int> v_indices() const;
  /// Indices of sl(2) x gl(m).
  std::vector<int> reductive_indices() const;
  /// Indices of sl(2).
  std::vector<int> sl2_indices() const { return {x(), h(), y()}; }
  /// Matrix transpose in sl(2) x gl(m): x <-> y, h fixed, e^i_j <-> e^j_i.
  int transpose_index(int p) const;

 private:
  int k_ = 0;
  int m_ = 0;
  std::vector<BasisElement> basis_;
  std::vector<linalg::SparseRow> table_;  // dim*dim, row-major
};

nlohmann::json to_json(const GradedLieAlgebra& g);

}  // namespace odeinv
