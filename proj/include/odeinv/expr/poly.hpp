#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "odeinv/expr/var.hpp"

namespace odeinv {

/// Power product of variables, stored as (variable, exponent) pairs sorted by
/// variable. Exponents are always positive.
class Monomial {
 public:
  using Factor = std::pair<VarId, std::uint32_t>;

  Monomial() = default;
  explicit Monomial(const VarId& v, std::uint32_t exp = 1);

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  std::uint32_t degree() const noexcept { return degree_; }
  std::uint32_t exponent(const VarId& v) const;
  bool is_one() const noexcept { return factors_.empty(); }

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// Returns a / b when b divides a.
  friend std::optional<Monomial> divide(const Monomial& a, const Monomial& b);
  Monomial without(const VarId& v) const;
  /// Decrease the exponent of v by one (v must occur).
  Monomial lowered(const VarId& v) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::string str() const;

 private:
  friend class Poly;
  std::vector<Factor> factors_;
  std::uint32_t degree_ = 0;
};

/// Graded lexicographic order; variables compared from the largest one down.
/// Returns <0, 0, >0.
int grlex_compare(const Monomial& a, const Monomial& b);

struct Term {
  Monomial mono;
  mpz_class coeff;

  friend bool operator==(const Term& a, const Term& b) {
    return a.coeff == b.coeff && a.mono == b.mono;
  }
};

/// Sparse multivariate polynomial with arbitrary-precision integer
/// coefficients. Terms are kept sorted by decreasing grlex order, so the
/// first term is the leading term.
class Poly {
 public:
  Poly() = default;
  Poly(long c);  // NOLINT(google-explicit-constructor)
  explicit Poly(mpz_class c);
  static Poly variable(const VarId& v);
  static Poly term(Monomial m, mpz_class c);
  /// Builds a polynomial from unordered terms (merging duplicates).
  static Poly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  bool is_one() const noexcept;
  /// Constant term value (0 when absent).
  mpz_class constant_term() const;
  const Term& leading() const { return terms_.front(); }
  int leading_sign() const;

  std::uint32_t total_degree() const;
  std::uint32_t degree_in(const VarId& v) const;
  bool contains(const VarId& v) const;
  bool has_aux() const;
  void collect_variables(std::set<VarId>& out) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const mpz_class& c);
  Poly operator-() const;
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }
  Poly pow(unsigned e) const;

  Poly derivative(const VarId& v) const;

  /// Positive gcd of the coefficients (0 for the zero polynomial).
  mpz_class content() const;
  /// Divides every coefficient by c (must divide exactly).
  Poly divided_by(const mpz_class& c) const;

  /// Coefficients of this polynomial viewed as univariate in v:
  /// result[d] is the coefficient of v^d.
  std::vector<Poly> coefficients_in(const VarId& v) const;
  static Poly from_coefficients(const std::vector<Poly>& coeffs, const VarId& v);

  friend bool operator==(const Poly&, const Poly&) = default;

  std::string str() const;

 private:
  void normalize_sorted_terms(std::vector<Term>&& raw);
  std::vector<Term> terms_;
};

/// Exact division in Z[vars]: returns q with f = q*g, or nullopt.
std::optional<Poly> divide_exact(const Poly& f, const Poly& g);

/// Greatest common divisor, normalized to a positive leading coefficient.
/// gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

/// Process-wide cap on the total degree of polynomial products (0 = none).
/// Exceeding it throws DegreeLimitExceeded.
void set_degree_limit(std::uint32_t limit);
std::uint32_t degree_limit();

}  // namespace odeinv
