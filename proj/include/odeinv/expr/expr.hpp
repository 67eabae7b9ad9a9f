#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "odeinv/expr/poly.hpp"
#include "odeinv/expr/var.hpp"

namespace odeinv {

struct ZeroCheck {
  bool zero = false;
  /// True when auxiliary symbols were present, so the answer only reflects
  /// the formal (syntactic) rational function.
  bool syntactic_only = false;
};

/// Exact rational function num/den over integer polynomials.
///
/// Canonical form: gcd(num, den) = 1 over Z, den has a positive leading
/// coefficient, and zero is 0/1. Two expressions are equal as rational
/// functions iff their canonical forms are identical.
class Expr {
 public:
  Expr() : den_(1) {}
  Expr(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  explicit Expr(const mpz_class& c) : num_(c), den_(1) {}
  explicit Expr(Poly p) : num_(std::move(p)), den_(1) {}
  /// Builds num/den and canonicalizes. Throws DivisionByZero for den = 0.
  Expr(Poly num, Poly den);

  static Expr rational(const mpz_class& num, const mpz_class& den);
  static Expr variable(const VarId& v) { return Expr(Poly::variable(v)); }
  static Expr x() { return variable(VarId::x()); }
  static Expr jet(int i, int r) { return variable(VarId::jet(i, r)); }
  static Expr aux(std::string_view name) { return variable(VarId::aux(name)); }

  const Poly& num() const noexcept { return num_; }
  const Poly& den() const noexcept { return den_; }

  bool is_syntactic_zero() const noexcept { return num_.is_zero(); }
  ZeroCheck zero_check() const;
  /// Exact zero test. With auxiliary symbols present this throws
  /// SyntacticOnly unless `allow_syntactic` is set.
  bool is_zero(bool allow_syntactic = false) const;
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const noexcept { return den_.is_one(); }
  bool has_aux() const;
  bool contains(const VarId& v) const { return num_.contains(v) || den_.contains(v); }
  void collect_variables(std::set<VarId>& out) const;
  std::set<VarId> variables() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr operator-() const;
  Expr& operator+=(const Expr& b) { return *this = *this + b; }
  Expr& operator-=(const Expr& b) { return *this = *this - b; }
  Expr& operator*=(const Expr& b) { return *this = *this * b; }
  Expr& operator/=(const Expr& b) { return *this = *this / b; }
  /// Integer power; negative exponents invert (DivisionByZero on 0).
  Expr pow(long e) const;
  Expr inverse() const;

  Expr partial(const VarId& v) const;
  /// Replaces v by `value` everywhere.
  Expr substitute(const VarId& v, const Expr& value) const;
  /// Simultaneous substitution.
  Expr substitute(const std::map<VarId, Expr>& values) const;

  friend bool operator==(const Expr&, const Expr&) = default;

  /// Prints num, (num)/(den), or (num)/c; parse(str()) reproduces the value.
  std::string str() const;

 private:
  Poly num_;
  Poly den_;
};

Expr pow(const Expr& e, long n);

/// A derivation is fixed by its values on variables; nullopt means 0.
using VarDerivative = std::function<std::optional<Expr>(const VarId&)>;
Expr apply_derivation(const Expr& e, const VarDerivative& dv);

/// Context for parsing: jet variables must satisfy 1 <= i <= m and
/// 0 <= r <= max_order. Identifiers other than x and yI_R become auxiliary
/// symbols when `allow_aux` is set, otherwise they are errors.
struct ParseContext {
  int m = 1;
  int max_order = 1;
  bool allow_aux = true;
};

/// Parses an expression. Throws ParseError (with position) on malformed
/// input and ShapeError on out-of-range jet indices.
Expr parse(std::string_view text, const ParseContext& ctx);

}  // namespace odeinv
