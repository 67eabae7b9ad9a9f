#include "odeinv/invariants/invariants.hpp"

#include <numeric>

#include "odeinv/error.hpp"

namespace odeinv {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

void require_shape(const OdeSystem& sys, bool ok, const std::string& what) {
  sys.validate();
  if (!ok) {
    throw ShapeError(what + " does not apply to a system with m=" + std::to_string(sys.m) +
                     ", order=" + std::to_string(sys.order));
  }
}

// Classical subscripts of a scalar right-hand side: partial derivatives in
// y^(i) first, then `total` total derivatives.
Expr fsub(const OdeSystem& sys, std::initializer_list<int> partials, int total = 0) {
  Expr e = sys.rhs[0];
  for (int i : partials) e = e.partial(VarId::jet(1, i));
  for (int t = 0; t < total; ++t) e = total_derivative(e, sys);
  return e;
}

Expr q(long n, long d = 1) { return Expr::rational(n, d); }

MatrixExpr jacobian_block(const OdeSystem& sys, int r) {
  const auto m = idx(sys.m);
  MatrixExpr a(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) a(i, j) = sys.rhs[i].partial(VarId::jet(static_cast<int>(j) + 1, r));
  }
  return a;
}

// (1, p) tensor d^p f^i / dy^{j_1}_r ... dy^{j_p}_r.
InvariantTensor hessian_tensor(const OdeSystem& sys, std::string name, int r, int p,
                               std::optional<int> degree) {
  auto t = InvariantTensor::shaped(std::move(name), sys.m, 1, p, degree);
  for (const auto& index : t.indices()) {
    Expr e = sys.rhs[idx(index[0])];
    for (int a = 1; a <= p; ++a) e = e.partial(VarId::jet(index[idx(a)] + 1, r));
    t.at(index) = e;
  }
  return t;
}

bool zero_component(const Expr& e, bool& syntactic) {
  auto z = e.zero_check();
  if (z.syntactic_only) syntactic = true;
  return z.zero;
}

}  // namespace

// ------------------------------------------------------------ InvariantTensor

InvariantTensor InvariantTensor::scalar(std::string name, Expr value, std::optional<int> degree) {
  InvariantTensor t;
  t.name = std::move(name);
  t.degree = degree;
  t.components = {std::move(value)};
  return t;
}

InvariantTensor InvariantTensor::shaped(std::string name, int m, int upper, int lower,
                                        std::optional<int> degree) {
  InvariantTensor t;
  t.name = std::move(name);
  t.m = m;
  t.upper = upper;
  t.lower = lower;
  t.degree = degree;
  std::size_t n = 1;
  for (int i = 0; i < upper + lower; ++i) n *= idx(m);
  t.components.assign(n, Expr());
  return t;
}

InvariantTensor InvariantTensor::from_matrix(std::string name, const MatrixExpr& a,
                                             std::optional<int> degree) {
  auto t = shaped(std::move(name), static_cast<int>(a.rows()), 1, 1, degree);
  t.components = a.entries();
  return t;
}

std::size_t InvariantTensor::flat(const std::vector<int>& index) const {
  if (index.size() != idx(rank())) throw ShapeError("tensor index of the wrong rank");
  std::size_t f = 0;
  for (int i : index) {
    if (i < 0 || i >= m) throw ShapeError("tensor index out of range");
    f = f * idx(m) + idx(i);
  }
  return f;
}

std::vector<std::vector<int>> InvariantTensor::indices() const {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(idx(rank()), 0);
  for (std::size_t n = 0; n < components.size(); ++n) {
    out.push_back(cur);
    for (int a = rank() - 1; a >= 0; --a) {
      if (++cur[idx(a)] < m) break;
      cur[idx(a)] = 0;
    }
  }
  return out;
}

std::string InvariantTensor::label(const std::vector<int>& index) const {
  std::string s;
  for (int a = 0; a < rank(); ++a) {
    if (a == upper && upper > 0) s += ';';
    s += std::to_string(index[idx(a)] + 1);
  }
  return s;
}

bool InvariantTensor::is_zero() const {
  for (const auto& c : components) {
    if (!c.is_syntactic_zero()) return false;
  }
  return true;
}

bool InvariantTensor::has_aux() const {
  for (const auto& c : components) {
    if (c.has_aux()) return true;
  }
  return false;
}

std::optional<std::pair<std::string, Expr>> InvariantTensor::first_nonzero() const {
  auto all = indices();
  for (std::size_t n = 0; n < components.size(); ++n) {
    if (!components[n].is_syntactic_zero()) return std::make_pair(label(all[n]), components[n]);
  }
  return std::nullopt;
}

bool InvariantTensor::symmetric_in_lower() const {
  for (const auto& index : indices()) {
    for (int a = upper; a + 1 < rank(); ++a) {
      auto swapped = index;
      std::swap(swapped[idx(a)], swapped[idx(a + 1)]);
      if (at(index) != at(swapped)) return false;
    }
  }
  return true;
}

// ------------------------------------------------------------------- tfp

namespace {

// S^i_{j_1..j_p} = sum_a delta^i_{j_a} c_{j_1..^j_a..j_p}
InvariantTensor delta_symmetrized(const InvariantTensor& c, int m, int p) {
  auto s = InvariantTensor::shaped("", m, 1, p, std::nullopt);
  for (const auto& index : s.indices()) {
    Expr acc;
    for (int a = 1; a <= p; ++a) {
      if (index[idx(a)] != index[0]) continue;
      std::vector<int> rest;
      for (int b = 1; b <= p; ++b) {
        if (b != a) rest.push_back(index[idx(b)]);
      }
      acc += c.at(rest);
    }
    s.at(index) = acc;
  }
  return s;
}

InvariantTensor contraction(const InvariantTensor& t) {
  auto c = InvariantTensor::shaped("", t.m, 0, t.lower - 1, std::nullopt);
  for (const auto& rest : c.indices()) {
    Expr acc;
    for (int i = 0; i < t.m; ++i) {
      std::vector<int> index{i, i};
      index.insert(index.end(), rest.begin(), rest.end());
      acc += t.at(index);
    }
    c.at(rest) = acc;
  }
  return c;
}

}  // namespace

InvariantTensor tfp(const InvariantTensor& t) {
  if (t.upper != 1 || t.lower < 1) {
    throw ShapeError("tfp needs one upper and at least one lower index (" + t.name + ")");
  }
  if (!t.symmetric_in_lower()) throw ShapeError("tfp needs a tensor symmetric in its lower indices");
  const int m = t.m;
  const int p = t.lower;
  // The correction is a * sym(delta (x) C) with C the contraction of t; the
  // contraction of sym(delta (x) C) is kappa * C. Find kappa on a probe
  // tensor of ones, then a = 1 / kappa.
  auto ones = InvariantTensor::shaped("", m, 0, p - 1, std::nullopt);
  for (auto& e : ones.components) e = Expr(1);
  Expr kappa = contraction(delta_symmetrized(ones, m, p)).components.front();
  Expr a = kappa.inverse();

  auto correction = delta_symmetrized(contraction(t), m, p);
  InvariantTensor out = t;
  for (std::size_t n = 0; n < out.components.size(); ++n) {
    out.components[n] -= a * correction.components[n];
  }
  return out;
}

// ------------------------------------------------------- classical formulas

TresseInvariants tresse(const OdeSystem& sys) {
  require_shape(sys, sys.m == 1 && sys.order == 2, "Tresse invariants");
  TresseInvariants r;
  r.i1 = fsub(sys, {1, 1, 1, 1});
  r.i2 = q(1, 6) * fsub(sys, {1, 1}, 2) - q(1, 6) * fsub(sys, {1}) * fsub(sys, {1, 1}, 1) -
         q(2, 3) * fsub(sys, {0, 1}, 1) + q(2, 3) * fsub(sys, {1}) * fsub(sys, {0, 1}) +
         fsub(sys, {0, 0}) - q(1, 2) * fsub(sys, {0}) * fsub(sys, {1, 1});
  return r;
}

namespace {

Expr wunschmann(const OdeSystem& sys) {
  Expr f1 = fsub(sys, {1});
  Expr f2 = fsub(sys, {2});
  return -fsub(sys, {0}) - q(1, 3) * f1 * f2 - q(2, 27) * f2.pow(3) + q(1, 2) * fsub(sys, {1}, 1) +
         q(1, 3) * f2 * fsub(sys, {2}, 1) - q(1, 6) * fsub(sys, {2}, 2);
}

}  // namespace

ChernInvariants chern_wunschmann(const OdeSystem& sys) {
  require_shape(sys, sys.m == 1 && sys.order == 3, "Chern invariants");
  return {fsub(sys, {2, 2, 2, 2}), wunschmann(sys)};
}

CartanConditions cartan_point3(const OdeSystem& sys) {
  require_shape(sys, sys.m == 1 && sys.order == 3, "Cartan point conditions");
  CartanConditions c;
  c.w = wunschmann(sys);
  c.f222 = fsub(sys, {2, 2, 2});
  Expr f2 = fsub(sys, {2});
  Expr f22 = fsub(sys, {2, 2});
  c.second = f22.pow(2) + q(6) * fsub(sys, {1, 2, 2}) + q(2) * f2 * c.f222;
  Expr w2 = c.w.partial(VarId::jet(1, 2));
  Expr common = fsub(sys, {1, 1}) + q(2) * w2 - q(2) * fsub(sys, {0, 2}) +
                q(2, 3) * f2 * fsub(sys, {1, 2});
  Expr f2x = fsub(sys, {2}, 1);
  Expr f1 = fsub(sys, {1});
  c.c_display = common + q(2) * f22 * (q(1, 3) * f2x - q(2, 9) * f2.pow(2) - f1);
  c.c_corrected = common + f22 * (q(1, 3) * f2x - q(1, 9) * f2.pow(2) - f1);
  return c;
}

FelsInvariants fels(const OdeSystem& sys) {
  require_shape(sys, sys.m >= 2 && sys.order == 2, "Fels invariants");
  auto a0 = jacobian_block(sys, 0);
  auto a1 = jacobian_block(sys, 1);
  MatrixExpr inner = a0 - q(1, 2) * total_derivative(a1, sys) + q(1, 4) * (a1 * a1);
  FelsInvariants r;
  r.w2 = tfp(InvariantTensor::from_matrix("W_2", inner, 2));
  r.i3 = tfp(hessian_tensor(sys, "I_3", 1, 3, 3));
  return r;
}

MedvedevInvariants medvedev(const OdeSystem& sys) {
  require_shape(sys, sys.m >= 2 && sys.order == 3, "Medvedev invariants");
  const int m = sys.m;
  const auto mm = idx(m);
  auto a0 = jacobian_block(sys, 0);
  auto a1 = jacobian_block(sys, 1);
  auto a2 = jacobian_block(sys, 2);
  auto da2 = total_derivative(a2, sys);
  MatrixExpr inner = a1 - da2 + q(1, 3) * (a2 * a2);

  MedvedevInvariants r;
  r.w2 = tfp(InvariantTensor::from_matrix("W_2", inner, 2));

  Expr hx = q(-1, 4L * m) * inner.trace();
  MatrixExpr w3 = a0 + q(1, 3) * (a2 * a1) - total_derivative(a1, sys) +
                  q(2, 3) * total_derivative(da2, sys) + q(2, 27) * (a2 * a2 * a2) -
                  q(4, 9) * (a2 * da2) - q(2, 9) * (da2 * a2) -
                  MatrixExpr::scalar(mm, q(2) * total_derivative(hx, sys));
  r.w3 = InvariantTensor::from_matrix("W_3", w3, 3);

  auto hess = hessian_tensor(sys, "I_2", 2, 2, 2);
  r.i2 = tfp(hess);

  // H^{-1}_j = 1/(6(m+1)) d^2 f^i / dq^i dq^j
  r.h_minus1 = InvariantTensor::shaped("H^-1", m, 0, 1, std::nullopt);
  r.h_minus1.auxiliary = true;
  for (int j = 0; j < m; ++j) {
    Expr acc;
    for (int i = 0; i < m; ++i) acc += hess.at({i, i, j});
    r.h_minus1.at({j}) = q(1, 6L * (m + 1)) * acc;
  }
  r.h_x = InvariantTensor::scalar("H^x", hx, std::nullopt);
  r.h_x.auxiliary = true;

  auto p = [](int j) { return VarId::jet(j + 1, 1); };
  auto qv = [](int j) { return VarId::jet(j + 1, 2); };
  r.i4 = InvariantTensor::shaped("I_4", m, 0, 2, 4);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      const Expr& hj = r.h_minus1.at({j});
      const Expr& hk = r.h_minus1.at({k});
      Expr contracted;
      for (int l = 0; l < m; ++l) {
        contracted += r.h_minus1.at({l}) * sys.rhs[idx(l)].partial(qv(j));
      }
      r.i4.at({j, k}) = -hk.partial(p(j)) + hx.partial(qv(j)).partial(qv(k)) -
                        total_derivative(hj, sys).partial(qv(k)) - contracted.partial(qv(k)) +
                        q(2) * hj * hk;
    }
  }
  return r;
}

std::vector<InvariantTensor> doubrov_scalar(const OdeSystem& sys) {
  require_shape(sys, sys.m == 1 && sys.order >= 4, "Doubrov scalar invariants");
  const int k = sys.k();
  std::vector<InvariantTensor> out;
  if (sys.order == 4) {
    out.push_back(InvariantTensor::scalar("I_3", fsub(sys, {3, 3, 3}), 3));
    Expr j4 = fsub(sys, {2, 3, 3}) + q(1, 6) * fsub(sys, {3, 3}).pow(2) +
              q(9, 8) * fsub(sys, {3}) * fsub(sys, {3, 3, 3}) + q(3, 4) * fsub(sys, {3, 3, 3}, 1);
    out.push_back(InvariantTensor::scalar("J_4", j4, 4));
    return out;
  }
  out.push_back(InvariantTensor::scalar("I_2", fsub(sys, {k, k}), 2));
  if (sys.order == 5) {
    Expr j6 = fsub(sys, {2, 3, 4}) - q(2, 3) * fsub(sys, {3, 3, 3}) - q(1, 2) * fsub(sys, {3, 4}).pow(2);
    auto t = InvariantTensor::scalar("J_6", j6, 6);
    t.partial = true;
    out.push_back(t);
  }
  if (sys.order >= 6) {
    auto t = InvariantTensor::scalar("J_3", fsub(sys, {k, k - 1}), 3);
    t.partial = true;
    out.push_back(t);
  }
  if (sys.order >= 7) {
    auto t = InvariantTensor::scalar("J_4", fsub(sys, {k - 1, k - 1}), 4);
    t.partial = true;
    out.push_back(t);
  }
  return out;
}

InvariantTensor i2_higher(const OdeSystem& sys) {
  require_shape(sys, sys.m >= 2 && sys.order >= 4, "I_2");
  return hessian_tensor(sys, "I_2", sys.k(), 2, 2);
}

// --------------------------------------------------------------- verdicts

namespace {

std::vector<InvariantTensor> generalized_wilczynski(const OdeSystem& sys, const Convention& conv,
                                                    int first_r) {
  std::vector<InvariantTensor> out;
  for (const auto& w : wilczynski_all(sys, conv)) {
    if (w.r < first_r) continue;
    out.push_back(InvariantTensor::from_matrix("W_" + std::to_string(w.r), w.rescaled, w.r));
  }
  return out;
}

struct Scan {
  std::vector<Witness> nonzero_full;
  std::vector<Witness> nonzero_partial;
  bool syntactic = false;
};

Scan scan(const std::vector<InvariantTensor>& list) {
  Scan s;
  for (const auto& t : list) {
    if (t.auxiliary) continue;
    auto all = t.indices();
    for (std::size_t n = 0; n < t.components.size(); ++n) {
      if (zero_component(t.components[n], s.syntactic)) continue;
      Witness w{t.name, t.label(all[n]), t.components[n]};
      (t.partial ? s.nonzero_partial : s.nonzero_full).push_back(std::move(w));
      break;
    }
  }
  return s;
}

Verdict decide(const std::vector<InvariantTensor>& list, EquivalenceKind kind) {
  Scan s = scan(list);
  Verdict v;
  v.kind = kind;
  v.syntactic_only = s.syntactic;
  if (!s.nonzero_full.empty()) {
    v.status = VerdictStatus::NotTrivializable;
    v.witnesses = std::move(s.nonzero_full);
  } else if (!s.nonzero_partial.empty()) {
    v.status = VerdictStatus::Undecided;
    v.witnesses = std::move(s.nonzero_partial);
  } else {
    v.status = VerdictStatus::Trivializable;
  }
  return v;
}

InvariantTensor named(const std::string& name, const Expr& e, std::optional<int> degree) {
  return InvariantTensor::scalar(name, e, degree);
}

}  // namespace

std::vector<InvariantTensor> all_invariants(const OdeSystem& sys, const Convention& conv) {
  sys.validate();
  std::vector<InvariantTensor> out;
  if (sys.m == 1 && sys.order == 2) {
    auto t = tresse(sys);
    out.push_back(named("I_1", t.i1, std::nullopt));
    out.push_back(named("I_2", t.i2, std::nullopt));
  } else if (sys.m == 1 && sys.order == 3) {
    auto ch = chern_wunschmann(sys);
    auto ca = cartan_point3(sys);
    out.push_back(named("I_1", ch.i1, std::nullopt));
    out.push_back(named("W", ch.w, 3));
    out.push_back(named("f_222", ca.f222, std::nullopt));
    out.push_back(named("f_22^2+6f_122+2f_2f_222", ca.second, std::nullopt));
    out.push_back(named("C", ca.c_corrected, std::nullopt));
    auto shown = named("C_display", ca.c_display, std::nullopt);
    shown.auxiliary = true;
    out.push_back(std::move(shown));
  } else if (sys.m == 1) {
    out = doubrov_scalar(sys);
    // W_2 is identically zero for scalar equations.
    for (auto& w : generalized_wilczynski(sys, conv, 3)) out.push_back(std::move(w));
  } else if (sys.order == 2) {
    auto f = fels(sys);
    out = {f.w2, f.i3};
  } else if (sys.order == 3) {
    auto md = medvedev(sys);
    out = {md.w2, md.w3, md.i2, md.i4, md.h_minus1, md.h_x};
  } else {
    out = generalized_wilczynski(sys, conv, 2);
    out.push_back(i2_higher(sys));
  }
  return out;
}

std::vector<Verdict> verdicts(const OdeSystem& sys, const Convention& conv) {
  auto inv = all_invariants(sys, conv);
  if (sys.m == 1 && sys.order == 3) {
    auto pick = [&](std::initializer_list<const char*> names) {
      std::vector<InvariantTensor> out;
      for (const auto& t : inv) {
        for (const char* n : names) {
          if (t.name == n) out.push_back(t);
        }
      }
      return out;
    };
    return {decide(pick({"I_1", "W"}), EquivalenceKind::Contact),
            decide(pick({"W", "f_222", "f_22^2+6f_122+2f_2f_222", "C"}), EquivalenceKind::Point)};
  }
  const auto kind =
      (sys.m == 1 && sys.order >= 4) ? EquivalenceKind::Contact : EquivalenceKind::Point;
  return {decide(inv, kind)};
}

Verdict trivializable(const OdeSystem& sys, const Convention& conv) {
  auto all = verdicts(sys, conv);
  return all.back();
}

const char* to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Trivializable:
      return "Trivializable";
    case VerdictStatus::NotTrivializable:
      return "NotTrivializable";
    case VerdictStatus::Undecided:
      return "Undecided";
  }
  return "?";
}

const char* to_string(EquivalenceKind k) { return k == EquivalenceKind::Point ? "point" : "contact"; }

nlohmann::json to_json(const InvariantTensor& t) {
  nlohmann::json comps = nlohmann::json::object();
  auto all = t.indices();
  bool syntactic = false;
  bool zero = true;
  for (std::size_t n = 0; n < t.components.size(); ++n) {
    comps[t.label(all[n])] = t.components[n].str();
    if (!zero_component(t.components[n], syntactic)) zero = false;
  }
  nlohmann::json j = {{"name", t.name},
                      {"degree", t.degree ? nlohmann::json(*t.degree) : nlohmann::json(nullptr)},
                      {"components", comps},
                      {"is_zero", zero}};
  if (t.partial) j["partial"] = true;
  if (t.auxiliary) j["auxiliary"] = true;
  if (syntactic) j["syntactic_only"] = true;
  return j;
}

nlohmann::json to_json(const Verdict& v) {
  nlohmann::json w = nlohmann::json::array();
  for (const auto& x : v.witnesses) {
    w.push_back({{"invariant", x.invariant}, {"component", x.component}, {"value", x.value.str()}});
  }
  nlohmann::json j = {{"status", to_string(v.status)}, {"equivalence", to_string(v.kind)}, {"witnesses", w}};
  if (v.syntactic_only) j["syntactic_only"] = true;
  return j;
}

}  // namespace odeinv
