#include "odeinv/expr/poly.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

#include "odeinv/error.hpp"

namespace odeinv {

namespace {

std::atomic<std::uint32_t> g_degree_limit{0};

bool term_greater(const Term& a, const Term& b) { return grlex_compare(a.mono, b.mono) > 0; }

void check_degree(std::uint32_t deg) {
  auto limit = g_degree_limit.load(std::memory_order_relaxed);
  if (limit != 0 && deg > limit) {
    throw DegreeLimitExceeded("polynomial degree " + std::to_string(deg) +
                              " exceeds ODEINV_MAX_DEGREE=" + std::to_string(limit));
  }
}

}  // namespace

void set_degree_limit(std::uint32_t limit) { g_degree_limit.store(limit); }
std::uint32_t degree_limit() { return g_degree_limit.load(); }

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(const VarId& v, std::uint32_t exp) {
  if (exp > 0) {
    factors_.emplace_back(v, exp);
    degree_ = exp;
  }
}

std::uint32_t Monomial::exponent(const VarId& v) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                             [](const Factor& f, const VarId& x) { return f.first < x; });
  return (it != factors_.end() && it->first == v) ? it->second : 0;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.factors_.reserve(a.factors_.size() + b.factors_.size());
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  while (i != a.factors_.end() && j != b.factors_.end()) {
    if (i->first == j->first) {
      r.factors_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    } else if (i->first < j->first) {
      r.factors_.push_back(*i++);
    } else {
      r.factors_.push_back(*j++);
    }
  }
  r.factors_.insert(r.factors_.end(), i, a.factors_.end());
  r.factors_.insert(r.factors_.end(), j, b.factors_.end());
  r.degree_ = a.degree_ + b.degree_;
  return r;
}

std::optional<Monomial> divide(const Monomial& a, const Monomial& b) {
  if (b.degree_ > a.degree_) return std::nullopt;
  Monomial r;
  auto i = a.factors_.begin();
  for (const auto& [v, e] : b.factors_) {
    while (i != a.factors_.end() && i->first < v) r.factors_.push_back(*i++);
    if (i == a.factors_.end() || i->first != v || i->second < e) return std::nullopt;
    if (i->second > e) r.factors_.emplace_back(v, i->second - e);
    ++i;
  }
  r.factors_.insert(r.factors_.end(), i, a.factors_.end());
  r.degree_ = a.degree_ - b.degree_;
  return r;
}

Monomial Monomial::without(const VarId& v) const {
  Monomial r;
  for (const auto& f : factors_) {
    if (f.first == v) continue;
    r.factors_.push_back(f);
    r.degree_ += f.second;
  }
  return r;
}

Monomial Monomial::lowered(const VarId& v) const {
  Monomial r = *this;
  for (auto it = r.factors_.begin(); it != r.factors_.end(); ++it) {
    if (it->first == v) {
      if (--it->second == 0) r.factors_.erase(it);
      --r.degree_;
      return r;
    }
  }
  return r;
}

std::string Monomial::str() const {
  std::string s;
  for (const auto& [v, e] : factors_) {
    if (!s.empty()) s += '*';
    s += v.str();
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

int grlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  auto i = fa.rbegin();
  auto j = fb.rbegin();
  while (i != fa.rend() && j != fb.rend()) {
    if (i->first == j->first) {
      if (i->second != j->second) return i->second < j->second ? -1 : 1;
      ++i;
      ++j;
    } else {
      return i->first > j->first ? 1 : -1;
    }
  }
  if (i != fa.rend()) return 1;
  if (j != fb.rend()) return -1;
  return 0;
}

// -------------------------------------------------------------------- Poly

Poly::Poly(long c) {
  if (c != 0) terms_.push_back(Term{Monomial{}, mpz_class(c)});
}

Poly::Poly(mpz_class c) {
  if (c != 0) terms_.push_back(Term{Monomial{}, std::move(c)});
}

Poly Poly::variable(const VarId& v) { return term(Monomial(v), 1); }

Poly Poly::term(Monomial m, mpz_class c) {
  Poly p;
  if (c != 0) {
    check_degree(m.degree());
    p.terms_.push_back(Term{std::move(m), std::move(c)});
  }
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  Poly p;
  p.normalize_sorted_terms(std::move(terms));
  if (!p.terms_.empty()) check_degree(p.total_degree());
  return p;
}

bool Poly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

bool Poly::is_one() const noexcept {
  return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1;
}

mpz_class Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return 0;
}

int Poly::leading_sign() const { return terms_.empty() ? 0 : sgn(terms_.front().coeff); }

std::uint32_t Poly::total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }

std::uint32_t Poly::degree_in(const VarId& v) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent(v));
  return d;
}

bool Poly::contains(const VarId& v) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.mono.exponent(v) > 0; });
}

bool Poly::has_aux() const {
  for (const auto& t : terms_) {
    for (const auto& f : t.mono.factors()) {
      if (f.first.is_aux()) return true;
    }
  }
  return false;
}

void Poly::collect_variables(std::set<VarId>& out) const {
  for (const auto& t : terms_) {
    for (const auto& f : t.mono.factors()) out.insert(f.first);
  }
}

void Poly::normalize_sorted_terms(std::vector<Term>&& raw) {
  // raw is sorted by decreasing monomial; merge equal monomials, drop zeros.
  terms_.clear();
  terms_.reserve(raw.size());
  for (auto& t : raw) {
    if (!terms_.empty() && terms_.back().mono == t.mono) {
      terms_.back().coeff += t.coeff;
      if (terms_.back().coeff == 0) terms_.pop_back();
    } else if (t.coeff != 0) {
      terms_.push_back(std::move(t));
    }
  }
}

Poly operator+(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  Poly r;
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  auto i = a.terms_.begin();
  auto j = b.terms_.begin();
  while (i != a.terms_.end() && j != b.terms_.end()) {
    int c = grlex_compare(i->mono, j->mono);
    if (c > 0) {
      r.terms_.push_back(*i++);
    } else if (c < 0) {
      r.terms_.push_back(*j++);
    } else {
      mpz_class s = i->coeff + j->coeff;
      if (s != 0) r.terms_.push_back(Term{i->mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  r.terms_.insert(r.terms_.end(), i, a.terms_.end());
  r.terms_.insert(r.terms_.end(), j, b.terms_.end());
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const mpz_class& c) {
  if (c == 0) return {};
  Poly r = a;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (b.is_constant()) return a * b.terms_[0].coeff;
  if (a.is_constant()) return b * a.terms_[0].coeff;
  check_degree(a.total_degree() + b.total_degree());
  const Poly& big = a.size() >= b.size() ? a : b;
  const Poly& small = a.size() >= b.size() ? b : a;
  if (small.size() == 1) {
    // Multiplying by a single term preserves the order.
    Poly r;
    r.terms_.reserve(big.size());
    const Term& s = small.terms_[0];
    for (const auto& t : big.terms_) r.terms_.push_back(Term{t.mono * s.mono, t.coeff * s.coeff});
    return r;
  }
  std::vector<Term> raw;
  raw.reserve(a.size() * b.size());
  for (const auto& s : small.terms_) {
    for (const auto& t : big.terms_) raw.push_back(Term{s.mono * t.mono, s.coeff * t.coeff});
  }
  std::sort(raw.begin(), raw.end(), term_greater);
  Poly r;
  r.normalize_sorted_terms(std::move(raw));
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly result(1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

Poly Poly::derivative(const VarId& v) const {
  Poly r;
  for (const auto& t : terms_) {
    auto e = t.mono.exponent(v);
    if (e == 0) continue;
    r.terms_.push_back(Term{t.mono.lowered(v), t.coeff * e});
  }
  return r;
}

mpz_class Poly::content() const {
  mpz_class g = 0;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Poly Poly::divided_by(const mpz_class& c) const {
  if (c == 1) return *this;
  Poly r = *this;
  for (auto& t : r.terms_) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), c.get_mpz_t());
  return r;
}

std::vector<Poly> Poly::coefficients_in(const VarId& v) const {
  std::vector<Poly> out(degree_in(v) + 1);
  for (const auto& t : terms_) {
    auto e = t.mono.exponent(v);
    out[e].terms_.push_back(Term{e ? t.mono.without(v) : t.mono, t.coeff});
  }
  return out;
}

Poly Poly::from_coefficients(const std::vector<Poly>& coeffs, const VarId& v) {
  std::vector<Term> raw;
  for (std::size_t d = 0; d < coeffs.size(); ++d) {
    Monomial vd(v, static_cast<std::uint32_t>(d));
    for (const auto& t : coeffs[d].terms_) raw.push_back(Term{t.mono * vd, t.coeff});
  }
  std::sort(raw.begin(), raw.end(), term_greater);
  Poly r;
  r.normalize_sorted_terms(std::move(raw));
  return r;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    mpz_class c = t.coeff;
    if (first) {
      if (c < 0) {
        os << '-';
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    if (t.mono.is_one()) {
      os << c.get_str();
    } else {
      if (c != 1) os << c.get_str() << '*';
      os << t.mono.str();
    }
  }
  return os.str();
}

// ------------------------------------------------------------ exact division

namespace {

// Cheap necessary condition for g | f: f(p) must be divisible by g(p) at
// integer points where g(p) != 0.
bool evaluation_allows_division(const Poly& f, const Poly& g) {
  std::set<VarId> vars;
  f.collect_variables(vars);
  g.collect_variables(vars);
  static constexpr long kPoints[2][5] = {{2, 3, 5, 7, 11}, {-3, 4, -2, 9, 6}};
  for (const auto& seeds : kPoints) {
    auto eval = [&](const Poly& p) {
      mpz_class sum = 0;
      for (const auto& t : p.terms()) {
        mpz_class val = t.coeff;
        for (const auto& [v, e] : t.mono.factors()) {
          auto idx = static_cast<std::size_t>(std::distance(vars.begin(), vars.find(v)));
          mpz_class base = seeds[idx % 5] + static_cast<long>(idx / 5) * 13;
          mpz_class pw;
          mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), e);
          val *= pw;
        }
        sum += val;
      }
      return sum;
    };
    mpz_class gv = eval(g);
    if (gv == 0) continue;
    mpz_class fv = eval(f);
    if (!mpz_divisible_p(fv.get_mpz_t(), gv.get_mpz_t())) return false;
  }
  return true;
}

}  // namespace

std::optional<Poly> divide_exact(const Poly& f, const Poly& g) {
  if (g.is_zero()) throw DivisionByZero();
  if (f.is_zero()) return Poly{};
  if (g.is_constant()) {
    const mpz_class& c = g.leading().coeff;
    for (const auto& t : f.terms()) {
      if (!mpz_divisible_p(t.coeff.get_mpz_t(), c.get_mpz_t())) return std::nullopt;
    }
    Poly q = f.divided_by(abs(c));
    return c < 0 ? -q : q;
  }
  if (f.total_degree() < g.total_degree()) return std::nullopt;
  if (g.size() == 1) {
    const Term& gt = g.leading();
    std::vector<Term> out;
    out.reserve(f.size());
    for (const auto& t : f.terms()) {
      auto m = divide(t.mono, gt.mono);
      if (!m || !mpz_divisible_p(t.coeff.get_mpz_t(), gt.coeff.get_mpz_t())) return std::nullopt;
      mpz_class c;
      mpz_divexact(c.get_mpz_t(), t.coeff.get_mpz_t(), gt.coeff.get_mpz_t());
      out.push_back(Term{std::move(*m), std::move(c)});
    }
    return Poly::from_terms(std::move(out));
  }
  if (!evaluation_allows_division(f, g)) return std::nullopt;
  Poly r = f;
  Poly q;
  const Term& lg = g.leading();
  while (!r.is_zero()) {
    const Term& lr = r.leading();
    auto m = divide(lr.mono, lg.mono);
    if (!m || !mpz_divisible_p(lr.coeff.get_mpz_t(), lg.coeff.get_mpz_t())) return std::nullopt;
    mpz_class c;
    mpz_divexact(c.get_mpz_t(), lr.coeff.get_mpz_t(), lg.coeff.get_mpz_t());
    Poly t = Poly::term(std::move(*m), std::move(c));
    q += t;
    r -= g * t;
  }
  return q;
}

}  // namespace odeinv
