#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "odeinv/expr/matrix.hpp"
#include "odeinv/jets/jets.hpp"
#include "odeinv/linwilczynski/linwilczynski.hpp"

namespace odeinv {

/// Which side the gauge commutator enters the twisted derivation on:
///   Right: grad M = D M + [M, Phi]
///   Left:  grad M = D M + [Phi, M]
enum class CommutatorSide { Right, Left };

struct Convention {
  CommutatorSide side = CommutatorSide::Right;
  int phi_sign = 1;  // Phi = phi_sign * A_k / (k+1)
  /// raw Theta_r = lambda[(order, r)] * rescaled W_r. Missing entries mean 1.
  std::map<std::pair<int, int>, mpz_class> lambda;

  /// The frozen convention shipped with the library.
  static Convention builtin();
  mpz_class lambda_for(int order, int r) const;

  friend bool operator==(const Convention&, const Convention&) = default;
};

Convention convention_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Convention& c);

/// Intermediate data of the reduction, kept for inspection and debugging.
struct ReductionState {
  int m = 1;
  int k = 1;
  Convention convention;
  LinDiffOp base;                   // linearization, P_r = -A_r
  MatrixExpr phi;                   // gauge log-derivative
  std::vector<MatrixExpr> q;        // gauge-reduced coefficients Q_0..Q_{k+1}
  bool trace_normalized = false;
  Expr rho_rate;                    // D(rho) after trace normalization
  std::vector<MatrixExpr> r_hat;    // reparametrized coefficients R_0..R_{k+1}
  std::vector<int> weights;         // weight of R_j is k+1-j
};

nlohmann::json to_json(const ReductionState& s);

/// Name of the auxiliary scalar standing for lambda''/lambda'.
VarId rho_symbol();

/// A_r = (d f^i / d y^j_r), P_r = -A_r, with the system's total derivative.
LinDiffOp linearize(const OdeSystem& sys);

/// Formal conjugation D -> D + Phi. Throws ConventionError when the D^k
/// coefficient does not vanish.
ReductionState gauge_reduce(const OdeSystem& sys, const Convention& conv = Convention::builtin());

/// Formal reparametrization with rho = lambda''/lambda'. The Riccati-type
/// rate D(rho) is solved from tr R_{k-1} = 0.
ReductionState trace_normalize(ReductionState state, const OdeSystem& sys);

/// Twisted derivation of the normalized state (rho differentiated through
/// its rate).
MatrixExpr twisted_derivative(const ReductionState& s, const OdeSystem& sys, const MatrixExpr& a);

struct WilczynskiResult {
  int r = 0;
  MatrixExpr raw;
  MatrixExpr rescaled;
  mpz_class lambda;
};

/// Generalized Wilczynski invariant W_r, 2 <= r <= k+1. Throws
/// ConventionError if rho survives.
WilczynskiResult wilczynski(const OdeSystem& sys, int r, const Convention& conv = Convention::builtin());
std::vector<WilczynskiResult> wilczynski_all(const OdeSystem& sys,
                                             const Convention& conv = Convention::builtin());

}  // namespace odeinv
