#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "odeinv/expr/expr.hpp"
#include "odeinv/genwilczynski/genwilczynski.hpp"
#include "odeinv/jets/jets.hpp"

namespace odeinv {

/// Tensor with `upper` contravariant indices followed by `lower` covariant
/// ones, every index ranging over 1..m. Components are stored row-major.
struct InvariantTensor {
  std::string name;
  int m = 1;
  int upper = 0;
  int lower = 0;
  std::optional<int> degree;
  /// Leading part of an invariant only defined modulo other invariants.
  bool partial = false;
  /// Helper quantity, not a relative invariant by itself.
  bool auxiliary = false;
  std::vector<Expr> components;

  static InvariantTensor scalar(std::string name, Expr value, std::optional<int> degree);
  static InvariantTensor shaped(std::string name, int m, int upper, int lower,
                                std::optional<int> degree);
  static InvariantTensor from_matrix(std::string name, const MatrixExpr& a,
                                     std::optional<int> degree);

  int rank() const noexcept { return upper + lower; }
  std::size_t flat(const std::vector<int>& index) const;  // 0-based indices
  Expr& at(const std::vector<int>& index) { return components[flat(index)]; }
  const Expr& at(const std::vector<int>& index) const { return components[flat(index)]; }
  /// Enumerates all 0-based multi-indices.
  std::vector<std::vector<int>> indices() const;
  /// "i;jl" style label with 1-based indices, e.g. "1;22".
  std::string label(const std::vector<int>& index) const;

  bool is_zero() const;
  bool has_aux() const;
  /// First nonzero component (label, value), if any.
  std::optional<std::pair<std::string, Expr>> first_nonzero() const;
  bool symmetric_in_lower() const;
};

/// Trace-free part of a (1,p) tensor symmetric in its lower indices, with
/// the upper index contracted against the lower ones.
InvariantTensor tfp(const InvariantTensor& t);

struct TresseInvariants {
  Expr i1, i2;
};
struct ChernInvariants {
  Expr i1, w;
};
struct CartanConditions {
  Expr w, f222, second;
  /// C exactly as classically displayed. It does not vanish on point
  /// transforms of y''' = 0 (try x <-> y), so verdicts use c_corrected.
  Expr c_display;
  /// f_11 + 2W_2 - 2f_02 + 2/3 f_2 f_12 + f_22 (1/3 f_2x - 1/9 f_2^2 - f_1).
  Expr c_corrected;
};
struct FelsInvariants {
  InvariantTensor w2, i3;
};
struct MedvedevInvariants {
  InvariantTensor w2, w3, i2, i4, h_minus1, h_x;
};

TresseInvariants tresse(const OdeSystem& sys);
ChernInvariants chern_wunschmann(const OdeSystem& sys);
CartanConditions cartan_point3(const OdeSystem& sys);
FelsInvariants fels(const OdeSystem& sys);
MedvedevInvariants medvedev(const OdeSystem& sys);
/// Displayed leading invariants of a scalar ODE of order >= 4. Entries only
/// known modulo other invariants are flagged `partial`.
std::vector<InvariantTensor> doubrov_scalar(const OdeSystem& sys);
InvariantTensor i2_higher(const OdeSystem& sys);

enum class VerdictStatus { Trivializable, NotTrivializable, Undecided };
enum class EquivalenceKind { Point, Contact };

struct Witness {
  std::string invariant;
  std::string component;
  Expr value;
};

struct Verdict {
  VerdictStatus status = VerdictStatus::Undecided;
  EquivalenceKind kind = EquivalenceKind::Point;
  std::vector<Witness> witnesses;
  /// Some zero test only had syntactic force (auxiliary symbols present).
  bool syntactic_only = false;
};

/// Every invariant applicable to the system's (m, order) class.
std::vector<InvariantTensor> all_invariants(const OdeSystem& sys,
                                            const Convention& conv = Convention::builtin());

/// All applicable verdicts; scalar third-order systems get a contact and a
/// point verdict (in that order).
std::vector<Verdict> verdicts(const OdeSystem& sys, const Convention& conv = Convention::builtin());
/// The verdict driving the exit code: the point verdict whenever there are two.
Verdict trivializable(const OdeSystem& sys, const Convention& conv = Convention::builtin());

const char* to_string(VerdictStatus s);
const char* to_string(EquivalenceKind k);
nlohmann::json to_json(const InvariantTensor& t);
nlohmann::json to_json(const Verdict& v);

}  // namespace odeinv
