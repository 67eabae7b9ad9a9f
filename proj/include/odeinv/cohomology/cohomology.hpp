#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "odeinv/liealg/liealg.hpp"
#include "odeinv/linalg/sparse.hpp"

namespace odeinv {

struct GradedBasis {
  std::vector<std::string> labels;
  std::vector<int> degrees;

  int size() const noexcept { return static_cast<int>(labels.size()); }
  /// Positions with the given degree, in order.
  std::vector<int> of_degree(int r) const;
  /// Sorted distinct degrees.
  std::vector<int> degree_set() const;
};

/// Exact linear map; matrix is codomain x domain.
struct LinearMapQ {
  GradedBasis domain;
  GradedBasis codomain;
  linalg::SparseMatrix matrix;

  /// this after `first`. Throws ShapeError if the bases do not match.
  LinearMapQ after(const LinearMapQ& first) const;
  /// True if every nonzero entry maps degree d to degree d + shift.
  bool shifts_degree_by(int shift) const;
  /// Block from domain degree r to codomain degree r + shift.
  linalg::SparseMatrix block(int r, int shift = 0) const;
};

/// Hom(Lambda^q S, T) for S, T lists of basis indices of g. Basis vectors
/// eps_{I,t} send the wedge of the sorted subset I of S to t.
class HomSpace {
 public:
  HomSpace(const GradedLieAlgebra& g, std::vector<int> source, int q, std::vector<int> target);

  int q() const noexcept { return q_; }
  const std::vector<int>& source() const noexcept { return source_; }
  const std::vector<int>& target() const noexcept { return target_; }
  int size() const noexcept { return static_cast<int>(masks_.size() * target_.size()); }
  /// Subsets are bitmasks over positions in `source`.
  const std::vector<std::uint32_t>& subsets() const noexcept { return masks_; }
  int index(std::uint32_t mask, int target_pos) const;
  /// -1 when the mask is not a q-subset.
  int subset_index(std::uint32_t mask) const;
  /// -1 when g-index p is not in the target list.
  int target_pos(int p) const;
  std::uint32_t mask_of(int idx) const { return masks_[static_cast<std::size_t>(idx) / target_.size()]; }
  int target_of(int idx) const { return static_cast<int>(static_cast<std::size_t>(idx) % target_.size()); }
  const GradedBasis& basis() const noexcept { return basis_; }
  /// Induced scalar product: dual Gram on arguments, Gram on values.
  const std::vector<mpq_class>& gram() const noexcept { return gram_; }

 private:
  std::vector<int> source_;
  int q_;
  std::vector<int> target_;
  std::vector<std::uint32_t> masks_;
  std::map<std::uint32_t, int> mask_index_;
  std::vector<int> target_pos_;
  GradedBasis basis_;
  std::vector<mpq_class> gram_;
};

/// Chevalley-Eilenberg complex C^q(L, g), L a subalgebra of g_- given by
/// basis indices, g acting by the adjoint representation.
class CochainComplex {
 public:
  CochainComplex(const GradedLieAlgebra& g, std::vector<int> subalgebra, int max_q);

  int max_q() const noexcept { return static_cast<int>(spaces_.size()) - 1; }
  const HomSpace& cochains(int q) const { return spaces_.at(static_cast<std::size_t>(q)); }
  /// C^q -> C^{q+1}, q < max_q.
  const LinearMapQ& differential(int q) const { return d_.at(static_cast<std::size_t>(q)); }
  /// Adjoint C^{q+1} -> C^q with respect to the induced scalar products.
  LinearMapQ codifferential(int q) const;

  /// dim H^q_r by rank-nullity, for q < max_q.
  std::map<int, int> cohomology_dims(int q, linalg::Exec exec = linalg::Exec::Parallel) const;
  /// dim ker of the Laplacian on C^q_r, for 1 <= q < max_q (q = 0 uses only
  /// the outgoing part).
  std::map<int, int> harmonic_dims(int q, linalg::Exec exec = linalg::Exec::Parallel) const;
  std::vector<linalg::SparseRow> harmonic_basis(int q, int r, linalg::Exec exec = linalg::Exec::Parallel) const;
  /// Laplacian block on C^q_r.
  linalg::SparseMatrix laplacian(int q, int r) const;

 private:
  const GradedLieAlgebra* g_;
  std::vector<HomSpace> spaces_;
  std::vector<LinearMapQ> d_;
};

/// Action of a basis element of g on Hom(Lambda^q S, T). With
/// `act_on_values` false the target is treated as a trivial module.
LinearMapQ hom_action(const GradedLieAlgebra& g, int element, const HomSpace& space,
                      bool act_on_values = true);

/// Sop^q: Hom(Lambda^q V, a) -> Hom(Lambda^{q+1} V, V), q >= 0.
LinearMapQ spencer(const GradedLieAlgebra& g, int q);

/// F = <v^1..v^k> (x) W and the copy <v^0> (x) W standing for V/F.
std::vector<int> f_indices(const GradedLieAlgebra& g);
std::vector<int> w_indices(const GradedLieAlgebra& g);

/// delta: Hom(Lambda^p F, Rx) -> Hom(Lambda^{p+1} F, V/F).
LinearMapQ delta_map(const GradedLieAlgebra& g, int p);
/// alpha: Hom(Lambda^2 V, V) -> Hom(Lambda^2 F, V/F), c |-> c|F mod F.
LinearMapQ alpha_map(const GradedLieAlgebra& g);
/// alpha-bar: Hom(V, sl(2)) -> Hom(F, Rx), the x-component on F.
LinearMapQ alpha_bar_map(const GradedLieAlgebra& g);
/// Sop^1 restricted to Hom(V, sl(2)).
LinearMapQ spencer1_sl2(const GradedLieAlgebra& g);
/// pi_W: Hom(Lambda^2 V, V) -> Hom(Lambda^2 V, V/F).
LinearMapQ pi_w_map(const GradedLieAlgebra& g);

/// Kernel of an element's action on a space, as vectors.
std::vector<linalg::SparseRow> invariants(const GradedLieAlgebra& g, int element, const HomSpace& space,
                                          bool act_on_values = true,
                                          linalg::Exec exec = linalg::Exec::Parallel);

struct GradedDims {
  std::map<int, int> dims;
  int total() const;
  int at(int r) const;
};

struct EffectivePart {
  GradedDims dims;
  /// Representatives in Hom(Lambda^2 V, V) per degree, independent modulo im Sop^1.
  std::map<int, std::vector<linalg::SparseRow>> representatives;
  bool gl_submodule = false;
};

/// {[c] in Inv_x(Hom_+(Lambda^2 V, V) / im Sop^1) : alpha(c) in im delta}.
EffectivePart effective_e02(const GradedLieAlgebra& g, linalg::Exec exec = linalg::Exec::Parallel);

struct SerreHochschild {
  GradedDims h2_direct;
  GradedDims h2_harmonic;
  GradedDims e02_quotient;  // Inv_x(Hom(Lambda^2 V, V) / im Sop^1)
  GradedDims e02_kernel;    // x-invariant part of ker Sop^2
  GradedDims e11;
  GradedDims y_invariants;  // Inv_y(gl(V)/a), graded as cochains x -> phi
  bool consistent = false;
};

SerreHochschild serre_hochschild_check(const GradedLieAlgebra& g, linalg::Exec exec = linalg::Exec::Parallel);

/// H^q(V, g) for the abelian ideal V, directly and through
/// dim ker Sop^q + dim Hom(Lambda^q V, V) - rank Sop^{q-1}, for q <= max_q.
struct AbelianIdealCheck {
  std::vector<GradedDims> direct;
  std::vector<GradedDims> formula;
  bool consistent = false;
};

AbelianIdealCheck abelian_ideal_check(const GradedLieAlgebra& g, int max_q = 2,
                                      linalg::Exec exec = linalg::Exec::Parallel);

/// Kernel dimension and kernel degrees of Sop^q.
GradedDims spencer_kernel(const GradedLieAlgebra& g, int q, linalg::Exec exec = linalg::Exec::Parallel);

/// Full report for one (k, m), in the golden-file format.
nlohmann::json cohomology_report(int k, int m, linalg::Exec exec = linalg::Exec::Parallel);

}  // namespace odeinv
