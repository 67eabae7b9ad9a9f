// Multivariate gcd over Z by recursive primitive polynomial remainder
// sequences. Intended for the moderate-size denominators that appear in
// point-transformation pullbacks, not as a general-purpose gcd engine.

#include <algorithm>

#include "odeinv/error.hpp"
#include "odeinv/expr/poly.hpp"

namespace odeinv {

namespace {

Poly normalize_sign(Poly p) { return p.leading_sign() < 0 ? -p : p; }

Poly exact(const Poly& f, const Poly& g) {
  auto q = divide_exact(f, g);
  if (!q) throw ConsistencyError("gcd: expected exact division failed");
  return *std::move(q);
}

// gcd of a polynomial with a single term c*m.
Poly gcd_with_term(const Poly& p, const Term& t) {
  mpz_class c = gcd(p.content(), t.coeff);
  Monomial common = t.mono;
  for (const auto& term : p.terms()) {
    Monomial next;
    for (const auto& [v, e] : common.factors()) {
      auto pe = term.mono.exponent(v);
      if (pe > 0) next = next * Monomial(v, std::min(e, pe));
    }
    common = std::move(next);
    if (common.is_one()) break;
  }
  return Poly::term(std::move(common), abs(c));
}

Poly gcd_list(const std::vector<Poly>& ps) {
  Poly g;
  for (const auto& p : ps) {
    g = gcd(g, p);
    if (g.is_one()) break;
  }
  return g;
}

std::vector<Poly> divide_all(const std::vector<Poly>& ps, const Poly& g) {
  std::vector<Poly> out;
  out.reserve(ps.size());
  for (const auto& p : ps) out.push_back(exact(p, g));
  return out;
}

// Pseudo-remainder of univariate polynomials (coefficient vectors) over the
// coefficient ring.
std::vector<Poly> pseudo_remainder(std::vector<Poly> a, const std::vector<Poly>& b) {
  const std::size_t db = b.size() - 1;
  const Poly& lb = b.back();
  while (a.size() >= b.size()) {
    Poly la = a.back();
    std::size_t shift = a.size() - b.size();
    for (auto& c : a) c = c * lb;
    for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
    while (!a.empty() && a.back().is_zero()) a.pop_back();
  }
  return a;
}

std::vector<Poly> primitive(const std::vector<Poly>& a) {
  Poly c = gcd_list(a);
  if (c.is_one()) return a;
  return divide_all(a, c);
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return normalize_sign(b);
  if (b.is_zero()) return normalize_sign(a);
  if (a == b) return normalize_sign(a);
  if (a.is_constant()) return Poly(gcd(a.leading().coeff, b.content()));
  if (b.is_constant()) return Poly(gcd(b.leading().coeff, a.content()));
  if (a.size() == 1) return gcd_with_term(b, a.leading());
  if (b.size() == 1) return gcd_with_term(a, b.leading());

  // Divisibility shortcut: common for repeated denominators.
  if (a.total_degree() <= b.total_degree()) {
    if (divide_exact(b, a)) return normalize_sign(a);
  } else if (divide_exact(a, b)) {
    return normalize_sign(b);
  }

  std::set<VarId> va;
  std::set<VarId> vb;
  a.collect_variables(va);
  b.collect_variables(vb);
  // Main variable: the largest variable present in both. A variable present
  // in only one operand can be eliminated through the content.
  for (auto it = va.rbegin(); it != va.rend(); ++it) {
    if (!vb.count(*it)) return gcd(gcd_list(a.coefficients_in(*it)), b);
  }
  for (auto it = vb.rbegin(); it != vb.rend(); ++it) {
    if (!va.count(*it)) return gcd(a, gcd_list(b.coefficients_in(*it)));
  }
  const VarId v = *va.rbegin();

  auto ua = a.coefficients_in(v);
  auto ub = b.coefficients_in(v);
  Poly ca = gcd_list(ua);
  Poly cb = gcd_list(ub);
  Poly content_gcd = gcd(ca, cb);
  ua = divide_all(ua, ca);
  ub = divide_all(ub, cb);
  if (ua.size() < ub.size()) std::swap(ua, ub);
  while (true) {
    auto r = pseudo_remainder(ua, ub);
    if (r.empty()) break;
    if (r.size() == 1) {
      ub = {Poly(1)};
      break;
    }
    ua = std::move(ub);
    ub = primitive(r);
  }
  Poly g = Poly::from_coefficients(primitive(ub), v);
  return normalize_sign(g * content_gcd);
}

}  // namespace odeinv
