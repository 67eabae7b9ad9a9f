#pragma once

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "odeinv/expr/matrix.hpp"
#include "odeinv/jets/jets.hpp"

namespace odeinv {

/// Derivation used to differentiate operator coefficients.
struct Derivation {
  std::string name;
  std::function<Expr(const Expr&)> apply;

  /// Plain d/dx; every other symbol is a constant.
  static Derivation d_dx();
  /// Total derivative of a system.
  static Derivation total(const OdeSystem& sys);

  MatrixExpr operator()(const MatrixExpr& a) const { return a.map(apply); }
  Expr operator()(const Expr& e) const { return apply(e); }
};

/// D^{k+1} + sum_{s=0}^{k} P_s D^s with m x m coefficient matrices.
struct LinDiffOp {
  int m = 1;
  int order = 2;
  std::vector<MatrixExpr> coeffs;  // P_0 .. P_k
  Derivation deriv = Derivation::d_dx();

  int k() const noexcept { return order - 1; }
  static LinDiffOp zero(int m, int order);
  void validate() const;
};

struct LfStatus {
  bool semi_canonical = false;  // P_k = 0
  bool laguerre_forsyth = false;  // P_k = 0 and tr P_{k-1} = 0
};

LfStatus lf_check(const LinDiffOp& op);

/// One summand c * P_index^(derivatives) of the Theta_r formula.
struct ThetaTerm {
  mpz_class num;
  mpz_class den;
  int index = 0;
  int derivatives = 0;
};

/// The summands of Theta_r for operators of order k+1.
std::vector<ThetaTerm> theta_terms(int k, int r);

/// Theta_r for 2 <= r <= k+1. Throws ShapeError for a non-LF operator or r
/// out of range.
MatrixExpr theta(const LinDiffOp& op, int r);

LinDiffOp op_from_json(const nlohmann::json& j);
nlohmann::json to_json(const LinDiffOp& op);
nlohmann::json to_json(const MatrixExpr& a);

}  // namespace odeinv
