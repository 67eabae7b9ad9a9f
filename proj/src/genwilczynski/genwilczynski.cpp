#include "odeinv/genwilczynski/genwilczynski.hpp"

#include "odeinv/error.hpp"

namespace odeinv {

namespace {

mpz_class binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return b;
}

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

// Formal derivative of rho: rho_i -> rho_{i+1}, nothing else moves.
VarId rho_derivative_symbol(int i) {
  return i == 0 ? rho_symbol() : VarId::aux("_rho" + std::to_string(i));
}

MatrixExpr twist(const MatrixExpr& dm, const MatrixExpr& m, const MatrixExpr& phi,
                 CommutatorSide side) {
  return side == CommutatorSide::Right ? dm + commutator(m, phi) : dm + commutator(phi, m);
}

// Coefficients of the operator (D + Phi)^n as c_0 + c_1 D + ... + c_n D^n,
// composing with D o M = M o D + grad M.
template <class Grad>
std::vector<MatrixExpr> next_power(const std::vector<MatrixExpr>& c, const MatrixExpr& phi,
                                   Grad&& grad) {
  const std::size_t m = phi.rows();
  std::vector<MatrixExpr> out(c.size() + 1, MatrixExpr::zero(m));
  for (std::size_t p = 0; p < c.size(); ++p) {
    out[p + 1] += c[p];
    out[p] += grad(c[p]) + phi * c[p];
  }
  return out;
}

struct Reparametrization {
  std::vector<Expr> omega;  // omega[1..]
  std::vector<Expr> nu;     // nu[0..]
};

// omega_1 = 1, omega_{i+1} = D omega_i + omega_i rho;
// nu_0 = 1, nu_{i+1} = D nu_i - (k/2) rho nu_i.
template <class Derive>
Reparametrization reparametrization(int k, int count, Derive&& derive) {
  Reparametrization rp;
  const Expr rho = Expr::variable(rho_symbol());
  const Expr half_k = Expr::rational(k, 2);
  rp.omega.assign(idx(count + 1), Expr());
  rp.omega[1] = Expr(1);
  for (int i = 1; i < count; ++i) rp.omega[idx(i + 1)] = derive(rp.omega[idx(i)]) + rp.omega[idx(i)] * rho;
  rp.nu.assign(idx(count + 1), Expr());
  rp.nu[0] = Expr(1);
  for (int i = 0; i < count; ++i) {
    rp.nu[idx(i + 1)] = derive(rp.nu[idx(i)]) - half_k * rho * rp.nu[idx(i)];
  }
  return rp;
}

// Partial Bell polynomials B_{n,j}(omega_1, omega_2, ...), 0 <= j <= n <= nmax.
std::vector<std::vector<Expr>> bell_table(const std::vector<Expr>& omega, int nmax) {
  std::vector<std::vector<Expr>> b(idx(nmax + 1), std::vector<Expr>(idx(nmax + 1)));
  b[0][0] = Expr(1);
  for (int n = 1; n <= nmax; ++n) {
    for (int j = 1; j <= n; ++j) {
      Expr acc;
      for (int i = 1; i <= n - j + 1; ++i) {
        const Expr& prev = b[idx(n - i)][idx(j - 1)];
        if (prev.is_syntactic_zero()) continue;
        acc += Expr(binomial(n - 1, i - 1)) * omega[idx(i)] * prev;
      }
      b[idx(n)][idx(j)] = acc;
    }
  }
  return b;
}

// R_j = sum_{n,i} C(n,i) Q_n nu_i B_{n-i,j}.
MatrixExpr reparametrized_coefficient(const std::vector<MatrixExpr>& q, const Reparametrization& rp,
                                      const std::vector<std::vector<Expr>>& bell, int j) {
  const std::size_t m = q[0].rows();
  MatrixExpr acc = MatrixExpr::zero(m);
  const int top = static_cast<int>(q.size()) - 1;
  for (int n = j; n <= top; ++n) {
    Expr scalar;
    for (int i = 0; i <= n - j; ++i) {
      const Expr& b = bell[idx(n - i)][idx(j)];
      if (b.is_syntactic_zero()) continue;
      scalar += Expr(binomial(n, i)) * rp.nu[idx(i)] * b;
    }
    if (!scalar.is_syntactic_zero()) acc += scalar * q[idx(n)];
  }
  return acc;
}

Expr system_derivative_with_rho(const Expr& e, const OdeSystem& sys, const Expr* rho_rate) {
  const int k = sys.k();
  const VarId rho = rho_symbol();
  return apply_derivation(e, [&](const VarId& v) -> std::optional<Expr> {
    if (v.is_x()) return Expr(1);
    if (v.is_jet()) {
      if (v.order() == k) return sys.rhs[idx(v.component() - 1)];
      return Expr::jet(v.component(), v.order() + 1);
    }
    if (v == rho && rho_rate) return *rho_rate;
    return std::nullopt;
  });
}

}  // namespace

VarId rho_symbol() { return VarId::aux("_rho"); }

Convention Convention::builtin() {
  Convention c;
  c.side = CommutatorSide::Right;
  c.phi_sign = 1;
  c.lambda[{2, 2}] = -2;
  c.lambda[{3, 2}] = -2;
  c.lambda[{3, 3}] = -12;
  return c;
}

mpz_class Convention::lambda_for(int order, int r) const {
  auto it = lambda.find({order, r});
  return it == lambda.end() ? mpz_class(1) : it->second;
}

Convention convention_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("convention file must be a JSON object");
  Convention c;
  c.lambda.clear();
  const std::string side = j.value("side", "right");
  if (side == "right") {
    c.side = CommutatorSide::Right;
  } else if (side == "left") {
    c.side = CommutatorSide::Left;
  } else {
    throw ParseError("convention 'side' must be \"right\" or \"left\"");
  }
  c.phi_sign = j.value("phi_sign", 1);
  if (c.phi_sign != 1 && c.phi_sign != -1) throw ParseError("convention 'phi_sign' must be 1 or -1");
  if (j.contains("lambda")) {
    for (const auto& entry : j["lambda"]) {
      if (!entry.is_object() || !entry.contains("order") || !entry.contains("r") ||
          !entry.contains("value")) {
        throw ParseError("lambda entries need 'order', 'r' and 'value'");
      }
      mpz_class v(entry["value"].is_string() ? entry["value"].get<std::string>()
                                             : std::to_string(entry["value"].get<long>()));
      if (v == 0) throw ParseError("lambda values must be nonzero");
      c.lambda[{entry["order"].get<int>(), entry["r"].get<int>()}] = v;
    }
  }
  return c;
}

nlohmann::json to_json(const Convention& c) {
  nlohmann::json lam = nlohmann::json::array();
  for (const auto& [key, v] : c.lambda) {
    lam.push_back({{"order", key.first}, {"r", key.second}, {"value", v.get_str()}});
  }
  return {{"side", c.side == CommutatorSide::Right ? "right" : "left"},
          {"phi_sign", c.phi_sign},
          {"lambda", lam}};
}

LinDiffOp linearize(const OdeSystem& sys) {
  sys.validate();
  LinDiffOp op;
  op.m = sys.m;
  op.order = sys.order;
  op.deriv = Derivation::total(sys);
  const auto m = idx(sys.m);
  for (int r = 0; r <= sys.k(); ++r) {
    MatrixExpr p(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        p(i, j) = -sys.rhs[i].partial(VarId::jet(static_cast<int>(j) + 1, r));
      }
    }
    op.coeffs.push_back(std::move(p));
  }
  return op;
}

ReductionState gauge_reduce(const OdeSystem& sys, const Convention& conv) {
  for (const auto& f : sys.rhs) {
    for (const auto& v : f.variables()) {
      if (v.is_aux() && v.name().front() == '_') {
        throw ShapeError("auxiliary symbols starting with '_' are reserved: " + v.str());
      }
    }
  }
  ReductionState s;
  s.m = sys.m;
  s.k = sys.k();
  s.convention = conv;
  s.base = linearize(sys);
  const int k = s.k;
  const auto m = idx(s.m);
  // A_k = -P_k
  s.phi = Expr::rational(-conv.phi_sign, k + 1) * s.base.coeffs[idx(k)];

  auto grad = [&](const MatrixExpr& a) {
    return twist(total_derivative(a, sys), a, s.phi, conv.side);
  };
  std::vector<MatrixExpr> power{MatrixExpr::identity(m)};
  s.q.assign(idx(k + 2), MatrixExpr::zero(m));
  for (int n = 0; n <= k + 1; ++n) {
    const MatrixExpr p = n == k + 1 ? MatrixExpr::identity(m) : s.base.coeffs[idx(n)];
    for (std::size_t j = 0; j < power.size(); ++j) s.q[j] += p * power[j];
    if (n <= k) power = next_power(power, s.phi, grad);
  }
  if (!s.q[idx(k)].is_zero(true)) {
    throw ConventionError("gauge reduction left a nonzero D^k coefficient: " + s.q[idx(k)].str());
  }
  return s;
}

ReductionState trace_normalize(ReductionState s, const OdeSystem& sys) {
  const int k = s.k;
  const int top = k + 1;

  // Pass 1: rho and its formal derivatives are independent symbols.
  auto formal = [&](const Expr& e) {
    return apply_derivation(e, [&](const VarId& v) -> std::optional<Expr> {
      if (!v.is_aux()) return std::nullopt;
      for (int i = 0; i <= top + 1; ++i) {
        if (v == rho_derivative_symbol(i)) return Expr::variable(rho_derivative_symbol(i + 1));
      }
      return std::nullopt;
    });
  };
  {
    auto rp = reparametrization(k, top, formal);
    auto bell = bell_table(rp.omega, top);
    Expr tr = reparametrized_coefficient(s.q, rp, bell, k - 1).trace();
    const VarId rho1 = rho_derivative_symbol(1);
    for (const auto& v : tr.variables()) {
      if (v.is_aux() && v.name().starts_with("_rho") && v != rho_symbol() && v != rho1) {
        throw ConventionError("trace condition involves " + v.str());
      }
    }
    auto coeffs = tr.num().coefficients_in(rho1);
    if (coeffs.size() != 2) {
      throw ConventionError("trace condition is not linear in the derivative of rho");
    }
    // a * rho' + b = 0
    Expr a(coeffs[1], tr.den());
    Expr b(coeffs[0], tr.den());
    s.rho_rate = -b / a;
  }

  // Pass 2: rho' replaced by its rate.
  auto derive = [&](const Expr& e) { return system_derivative_with_rho(e, sys, &s.rho_rate); };
  auto rp = reparametrization(k, top, derive);
  auto bell = bell_table(rp.omega, top);
  s.r_hat.clear();
  s.weights.clear();
  for (int j = 0; j <= top; ++j) {
    s.r_hat.push_back(reparametrized_coefficient(s.q, rp, bell, j));
    s.weights.push_back(k + 1 - j);
  }
  if (!s.r_hat[idx(k)].is_zero(true) || s.r_hat[idx(top)] != MatrixExpr::identity(idx(s.m))) {
    throw ConsistencyError("reparametrization broke the leading coefficients");
  }
  if (!s.r_hat[idx(k - 1)].trace().is_zero(true)) {
    throw ConsistencyError("trace normalization failed");
  }
  s.trace_normalized = true;
  return s;
}

MatrixExpr twisted_derivative(const ReductionState& s, const OdeSystem& sys, const MatrixExpr& a) {
  const Expr* rate = s.trace_normalized ? &s.rho_rate : nullptr;
  MatrixExpr d = a.map([&](const Expr& e) { return system_derivative_with_rho(e, sys, rate); });
  return twist(d, a, s.phi, s.convention.side);
}

namespace {

MatrixExpr theta_from_state(const ReductionState& s, const OdeSystem& sys, int r) {
  const int k = s.k;
  const Expr rho = Expr::variable(rho_symbol());
  MatrixExpr acc = MatrixExpr::zero(idx(s.m));
  for (const auto& t : theta_terms(k, r)) {
    MatrixExpr term = s.r_hat[idx(t.index)];
    int w = s.weights[idx(t.index)];
    // Weighted derivative: grad F - w rho F raises the weight by one.
    for (int d = 0; d < t.derivatives; ++d, ++w) {
      term = twisted_derivative(s, sys, term) - (Expr(w) * rho) * term;
    }
    acc += Expr::rational(t.num, t.den) * term;
  }
  for (const auto& e : acc.entries()) {
    for (const auto& v : e.variables()) {
      if (v.is_aux() && v.name().starts_with("_rho")) {
        throw ConventionError("rho failed to cancel in W_" + std::to_string(r));
      }
    }
  }
  return acc;
}

WilczynskiResult finish(const ReductionState& s, const OdeSystem& sys, int r) {
  WilczynskiResult w;
  w.r = r;
  w.raw = theta_from_state(s, sys, r);
  w.lambda = s.convention.lambda_for(sys.order, r);
  w.rescaled = Expr::rational(1, w.lambda) * w.raw;
  return w;
}

}  // namespace

WilczynskiResult wilczynski(const OdeSystem& sys, int r, const Convention& conv) {
  if (r < 2 || r > sys.order) {
    throw ShapeError("W_r needs 2 <= r <= order (r=" + std::to_string(r) + ")");
  }
  auto s = trace_normalize(gauge_reduce(sys, conv), sys);
  return finish(s, sys, r);
}

std::vector<WilczynskiResult> wilczynski_all(const OdeSystem& sys, const Convention& conv) {
  auto s = trace_normalize(gauge_reduce(sys, conv), sys);
  std::vector<WilczynskiResult> out;
  for (int r = 2; r <= sys.order; ++r) out.push_back(finish(s, sys, r));
  return out;
}

nlohmann::json to_json(const ReductionState& s) {
  nlohmann::json q = nlohmann::json::array();
  for (const auto& a : s.q) q.push_back(to_json(a));
  nlohmann::json r = nlohmann::json::array();
  for (const auto& a : s.r_hat) r.push_back(to_json(a));
  return {{"m", s.m},
          {"k", s.k},
          {"convention", to_json(s.convention)},
          {"linearization", to_json(s.base)},
          {"phi", to_json(s.phi)},
          {"q", q},
          {"trace_normalized", s.trace_normalized},
          {"rho", rho_symbol().str()},
          {"rho_rate", s.rho_rate.str()},
          {"r_hat", r},
          {"weights", s.weights}};
}

}  // namespace odeinv
