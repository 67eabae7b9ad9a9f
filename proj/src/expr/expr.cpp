#include "odeinv/expr/expr.hpp"

#include "odeinv/error.hpp"

namespace odeinv {

namespace {

Poly exact_quotient(const Poly& f, const Poly& g) {
  if (g.is_one()) return f;
  auto q = divide_exact(f, g);
  if (!q) throw ConsistencyError("expr: inexact division by a common factor");
  return *std::move(q);
}

}  // namespace

Expr::Expr(Poly num, Poly den) {
  if (den.is_zero()) throw DivisionByZero();
  if (num.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (!den.is_one()) {
    Poly g = gcd(num, den);
    if (!g.is_one()) {
      num = exact_quotient(num, g);
      den = exact_quotient(den, g);
    }
    if (den.leading_sign() < 0) {
      num = -num;
      den = -den;
    }
  }
  num_ = std::move(num);
  den_ = std::move(den);
}

Expr Expr::rational(const mpz_class& num, const mpz_class& den) {
  return Expr(Poly(num), Poly(den));
}

ZeroCheck Expr::zero_check() const { return {num_.is_zero(), has_aux()}; }

bool Expr::is_zero(bool allow_syntactic) const {
  if (!allow_syntactic && has_aux()) {
    throw SyntacticOnly("zero test on an expression with auxiliary symbols: " + str());
  }
  return num_.is_zero();
}

bool Expr::has_aux() const { return num_.has_aux() || den_.has_aux(); }

void Expr::collect_variables(std::set<VarId>& out) const {
  num_.collect_variables(out);
  den_.collect_variables(out);
}

std::set<VarId> Expr::variables() const {
  std::set<VarId> out;
  collect_variables(out);
  return out;
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.num_.is_zero()) return b;
  if (b.num_.is_zero()) return a;
  if (a.den_.is_one() && b.den_.is_one()) return Expr(a.num_ + b.num_);
  if (a.den_ == b.den_) return Expr(a.num_ + b.num_, a.den_);
  // Henrici: with reduced inputs, the result only needs reducing by
  // factors of g = gcd(den_a, den_b).
  Poly g = gcd(a.den_, b.den_);
  Poly da = exact_quotient(a.den_, g);
  Poly db = exact_quotient(b.den_, g);
  Poly num = a.num_ * db + b.num_ * da;
  Poly den = a.den_ * db;
  if (num.is_zero()) return Expr();
  Expr r;
  if (g.is_one()) {
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
  }
  return Expr(std::move(num), std::move(den));
}

Expr Expr::operator-() const {
  Expr r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  if (a.num_.is_zero() || b.num_.is_zero()) return Expr();
  if (a.den_.is_one() && b.den_.is_one()) return Expr(a.num_ * b.num_);
  Poly g1 = gcd(a.num_, b.den_);
  Poly g2 = gcd(b.num_, a.den_);
  Expr r;
  r.num_ = exact_quotient(a.num_, g1) * exact_quotient(b.num_, g2);
  r.den_ = exact_quotient(a.den_, g2) * exact_quotient(b.den_, g1);
  if (r.den_.leading_sign() < 0) {
    r.num_ = -r.num_;
    r.den_ = -r.den_;
  }
  return r;
}

Expr Expr::inverse() const {
  if (num_.is_zero()) throw DivisionByZero();
  Expr r;
  r.num_ = den_;
  r.den_ = num_;
  if (r.den_.leading_sign() < 0) {
    r.num_ = -r.num_;
    r.den_ = -r.den_;
  }
  return r;
}

Expr operator/(const Expr& a, const Expr& b) { return a * b.inverse(); }

Expr Expr::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Expr r;
  r.num_ = num_.pow(static_cast<unsigned>(e));
  r.den_ = den_.pow(static_cast<unsigned>(e));
  return r;
}

Expr pow(const Expr& e, long n) { return e.pow(n); }

Expr Expr::partial(const VarId& v) const {
  const bool in_num = num_.contains(v);
  const bool in_den = den_.contains(v);
  if (!in_num && !in_den) return Expr();
  if (!in_den) return Expr(num_.derivative(v), den_);
  // (n/d)' = (n' d - n d') / d^2
  return Expr(num_.derivative(v) * den_ - num_ * den_.derivative(v), den_ * den_);
}

namespace {

Expr derive_poly(const Poly& p, const VarDerivative& dv) {
  std::set<VarId> vars;
  p.collect_variables(vars);
  Expr acc;
  for (const auto& v : vars) {
    auto d = dv(v);
    if (!d || d->is_syntactic_zero()) continue;
    acc += Expr(p.derivative(v)) * *d;
  }
  return acc;
}

}  // namespace

Expr apply_derivation(const Expr& e, const VarDerivative& dv) {
  Expr dn = derive_poly(e.num(), dv);
  if (e.den().is_constant()) return dn.is_syntactic_zero() ? dn : dn * Expr(Poly(1), e.den());
  Expr dd = derive_poly(e.den(), dv);
  Expr d = Expr(e.den());
  // (n/d)' = n'/d - n d'/d^2
  return (dn - Expr(e.num(), e.den()) * dd) / d;
}

namespace {

// p(v := a/b) as an (unreduced) pair num/den with den = b^deg.
std::pair<Poly, Poly> substitute_poly(const Poly& p, const VarId& v, const Expr& value) {
  if (!p.contains(v)) return {p, Poly(1)};
  auto coeffs = p.coefficients_in(v);
  const std::size_t d = coeffs.size() - 1;
  const Poly& a = value.num();
  const Poly& b = value.den();
  // Horner: sum c_i a^i b^(d-i)
  Poly acc = coeffs[d];
  Poly bpow(1);
  for (std::size_t i = d; i-- > 0;) {
    bpow = bpow * b;
    acc = acc * a + coeffs[i] * bpow;
  }
  return {acc, bpow};
}

}  // namespace

Expr Expr::substitute(const VarId& v, const Expr& value) const {
  if (!contains(v)) return *this;
  // Both halves come back over powers of b = den(value); only the
  // difference in those powers survives.
  Poly nn = substitute_poly(num_, v, value).first;
  Poly dn = substitute_poly(den_, v, value).first;
  auto dn_deg = den_.degree_in(v);
  auto nn_deg = num_.degree_in(v);
  Poly b = value.den();
  if (nn_deg >= dn_deg) {
    return Expr(nn, dn * b.pow(nn_deg - dn_deg));
  }
  return Expr(nn * b.pow(dn_deg - nn_deg), dn);
}

Expr Expr::substitute(const std::map<VarId, Expr>& values) const {
  // Sequential substitution is simultaneous when no replacement value
  // mentions another replaced variable; otherwise rename through fresh aux.
  bool clash = false;
  for (const auto& [v, e] : values) {
    for (const auto& [w, unused] : values) {
      if (e.contains(w)) clash = true;
    }
  }
  Expr r = *this;
  if (!clash) {
    for (const auto& [v, e] : values) r = r.substitute(v, e);
    return r;
  }
  std::map<VarId, Expr> stage;
  int n = 0;
  for (const auto& [v, e] : values) {
    VarId tmp = VarId::aux("zz_sub" + std::to_string(n++));
    r = r.substitute(v, Expr::variable(tmp));
    stage.emplace(tmp, e);
  }
  for (const auto& [v, e] : stage) r = r.substitute(v, e);
  return r;
}

std::string Expr::str() const {
  if (den_.is_one()) return num_.str();
  std::string n = num_.size() == 1 && num_.leading().coeff > 0
                      ? num_.str()
                      : "(" + num_.str() + ")";
  if (den_.is_constant()) return n + "/" + den_.str();
  return n + "/(" + den_.str() + ")";
}

}  // namespace odeinv
