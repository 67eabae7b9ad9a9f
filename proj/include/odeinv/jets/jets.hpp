#pragma once

#include <optional>
#include <vector>

#include "json.hpp"
#include "odeinv/expr/expr.hpp"
#include "odeinv/expr/matrix.hpp"

namespace odeinv {

/// Solved system y^i_{k+1} = f^i(x, y^j_r : r <= k), order = k + 1.
struct OdeSystem {
  int m = 1;
  int order = 2;
  std::vector<Expr> rhs;

  int k() const noexcept { return order - 1; }
  static OdeSystem trivial(int m, int order);
  /// Throws ShapeError when the sizes are inconsistent or a right-hand side
  /// mentions a jet variable outside {y^j_r : r <= k, j <= m}.
  void validate() const;
  ParseContext parse_context() const { return {m, order, true}; }

  friend bool operator==(const OdeSystem&, const OdeSystem&) = default;
};

/// Point transformation (x, y) -> (X(x, y), Y^i(x, y)).
struct PointMap {
  int m = 1;
  Expr x;
  std::vector<Expr> y;

  static PointMap identity(int m);
  /// Jacobian of (X, Y) with respect to (x, y^1_0, ..., y^m_0).
  MatrixExpr jacobian() const;
  /// Throws ShapeError for wrong sizes, jet variables of positive order, or
  /// an identically vanishing Jacobian determinant.
  void validate() const;
};

/// (outer o inner)(p) = outer(inner(p)).
PointMap compose(const PointMap& outer, const PointMap& inner);

/// Total derivative restricted to the equation: top-order jets are replaced
/// by the right-hand side. Auxiliary symbols are constants. Throws
/// ShapeError when e mentions y^i_{k+1}.
Expr total_derivative(const Expr& e, const OdeSystem& sys);
MatrixExpr total_derivative(const MatrixExpr& a, const OdeSystem& sys);

/// Total derivative on the full jet space: D = d/dx + sum y^i_{r+1} d/dy^i_r.
Expr free_total_derivative(const Expr& e);

/// Prolonged coordinates ybar[i][s], s = 0..up_to, computed on the free jet
/// space (every jet coordinate independent).
std::vector<std::vector<Expr>> prolong(const PointMap& map, int up_to);
/// Same, with jets of order sys.order replaced through the system.
std::vector<std::vector<Expr>> prolong(const PointMap& map, const OdeSystem& sys, int up_to);

/// System in source coordinates whose solutions map to solutions of `target`.
OdeSystem pullback(const PointMap& map, const OdeSystem& target);

// JSON file formats.
OdeSystem system_from_json(const nlohmann::json& j);
nlohmann::json to_json(const OdeSystem& sys);
PointMap map_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PointMap& map);

}  // namespace odeinv
