#include "odeinv/jets/jets.hpp"

#include <string>

#include "odeinv/error.hpp"

namespace odeinv {

OdeSystem OdeSystem::trivial(int m, int order) {
  OdeSystem s;
  s.m = m;
  s.order = order;
  s.rhs.assign(static_cast<std::size_t>(m), Expr());
  return s;
}

void OdeSystem::validate() const {
  if (m < 1) throw ShapeError("system size m must be positive");
  if (order < 2) throw ShapeError("system order must be at least 2");
  if (rhs.size() != static_cast<std::size_t>(m)) {
    throw ShapeError("expected " + std::to_string(m) + " right-hand sides, got " +
                     std::to_string(rhs.size()));
  }
  for (const auto& f : rhs) {
    for (const auto& v : f.variables()) {
      if (v.is_jet() && (v.component() > m || v.order() > k())) {
        throw ShapeError("right-hand side mentions " + v.str() + " outside the jet range of " +
                         "an order-" + std::to_string(order) + " system in " +
                         std::to_string(m) + " unknowns");
      }
    }
  }
}

PointMap PointMap::identity(int m) {
  PointMap p;
  p.m = m;
  p.x = Expr::x();
  for (int i = 1; i <= m; ++i) p.y.push_back(Expr::jet(i, 0));
  return p;
}

MatrixExpr PointMap::jacobian() const {
  const std::size_t n = static_cast<std::size_t>(m) + 1;
  MatrixExpr jac(n, n);
  for (std::size_t row = 0; row < n; ++row) {
    const Expr& f = row == 0 ? x : y[row - 1];
    jac(row, 0) = f.partial(VarId::x());
    for (int j = 1; j <= m; ++j) jac(row, static_cast<std::size_t>(j)) = f.partial(VarId::jet(j, 0));
  }
  return jac;
}

void PointMap::validate() const {
  if (m < 1) throw ShapeError("map size m must be positive");
  if (y.size() != static_cast<std::size_t>(m)) {
    throw ShapeError("expected " + std::to_string(m) + " target components, got " +
                     std::to_string(y.size()));
  }
  auto check = [&](const Expr& e) {
    for (const auto& v : e.variables()) {
      if (v.is_jet() && (v.order() != 0 || v.component() > m)) {
        throw ShapeError("point map component mentions " + v.str());
      }
    }
  };
  check(x);
  for (const auto& e : y) check(e);
  if (jacobian().determinant().is_syntactic_zero()) {
    throw ShapeError("point map has an identically singular Jacobian");
  }
}

PointMap compose(const PointMap& outer, const PointMap& inner) {
  if (outer.m != inner.m) throw ShapeError("composing maps of different sizes");
  std::map<VarId, Expr> subs{{VarId::x(), inner.x}};
  for (int i = 1; i <= inner.m; ++i) subs.emplace(VarId::jet(i, 0), inner.y[static_cast<std::size_t>(i - 1)]);
  PointMap r;
  r.m = outer.m;
  r.x = outer.x.substitute(subs);
  for (const auto& e : outer.y) r.y.push_back(e.substitute(subs));
  return r;
}

Expr total_derivative(const Expr& e, const OdeSystem& sys) {
  const int k = sys.k();
  return apply_derivation(e, [&](const VarId& v) -> std::optional<Expr> {
    if (v.is_x()) return Expr(1);
    if (!v.is_jet()) return std::nullopt;
    if (v.order() > k) {
      throw ShapeError("total derivative on the equation: " + v.str() + " exceeds order " +
                       std::to_string(k));
    }
    if (v.order() == k) return sys.rhs[static_cast<std::size_t>(v.component() - 1)];
    return Expr::jet(v.component(), v.order() + 1);
  });
}

MatrixExpr total_derivative(const MatrixExpr& a, const OdeSystem& sys) {
  return a.map([&](const Expr& e) { return total_derivative(e, sys); });
}

Expr free_total_derivative(const Expr& e) {
  return apply_derivation(e, [](const VarId& v) -> std::optional<Expr> {
    if (v.is_x()) return Expr(1);
    if (!v.is_jet()) return std::nullopt;
    return Expr::jet(v.component(), v.order() + 1);
  });
}

namespace {

template <class Derive>
std::vector<std::vector<Expr>> prolong_with(const PointMap& map, int up_to, Derive&& derive) {
  map.validate();
  Expr dx = derive(map.x);
  if (dx.is_syntactic_zero()) {
    throw ShapeError("point map collapses the independent variable (D X = 0)");
  }
  std::vector<std::vector<Expr>> out(static_cast<std::size_t>(map.m));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].push_back(map.y[i]);
    for (int s = 0; s < up_to; ++s) out[i].push_back(derive(out[i].back()) / dx);
  }
  return out;
}

}  // namespace

std::vector<std::vector<Expr>> prolong(const PointMap& map, int up_to) {
  return prolong_with(map, up_to, [](const Expr& e) { return free_total_derivative(e); });
}

std::vector<std::vector<Expr>> prolong(const PointMap& map, const OdeSystem& sys, int up_to) {
  sys.validate();
  if (map.m != sys.m) throw ShapeError("map and system sizes differ");
  return prolong_with(map, up_to, [&](const Expr& e) { return total_derivative(e, sys); });
}

OdeSystem pullback(const PointMap& map, const OdeSystem& target) {
  target.validate();
  if (map.m != target.m) throw ShapeError("map and system sizes differ");
  const int m = target.m;
  const int k = target.k();
  const auto ybar = prolong(map, k);
  const Expr dx = free_total_derivative(map.x);

  // D(ybar^i_k) = c^i + sum_j M_ij y^j_{k+1}.
  MatrixExpr mat(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
  std::vector<Expr> c(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const Expr& top = ybar[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    for (int j = 0; j < m; ++j) mat(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = top.partial(VarId::jet(j + 1, k));
    c[static_cast<std::size_t>(i)] = apply_derivation(top, [&](const VarId& v) -> std::optional<Expr> {
      if (v.is_x()) return Expr(1);
      if (!v.is_jet() || v.order() >= k) return std::nullopt;
      return Expr::jet(v.component(), v.order() + 1);
    });
  }
  Expr det = mat.determinant();
  if (det.is_syntactic_zero()) {
    throw ShapeError("pullback: the top-order Jacobian is singular");
  }

  std::map<VarId, Expr> subs{{VarId::x(), map.x}};
  for (int i = 1; i <= m; ++i) {
    for (int r = 0; r <= k; ++r) {
      subs.emplace(VarId::jet(i, r), ybar[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(r)]);
    }
  }
  std::vector<Expr> b(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const Expr& f = target.rhs[static_cast<std::size_t>(i)];
    Expr fbar = f.is_syntactic_zero() ? Expr() : f.substitute(subs);
    b[static_cast<std::size_t>(i)] = dx * fbar - c[static_cast<std::size_t>(i)];
  }

  OdeSystem src;
  src.m = m;
  src.order = target.order;
  if (m == 1) {
    src.rhs.push_back(b[0] / det);
    return src;
  }
  MatrixExpr adj = mat.adjugate();
  Expr inv_det = det.inverse();
  for (int i = 0; i < m; ++i) {
    Expr acc;
    for (int j = 0; j < m; ++j) acc += adj(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) * b[static_cast<std::size_t>(j)];
    src.rhs.push_back(acc * inv_det);
  }
  return src;
}

// ------------------------------------------------------------------ JSON

namespace {

int require_int(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_number_integer()) {
    throw ParseError(std::string("missing integer field '") + key + "'");
  }
  return j[key].get<int>();
}

std::vector<std::string> require_strings(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw ParseError(std::string("missing array field '") + key + "'");
  }
  std::vector<std::string> out;
  for (const auto& e : j[key]) {
    if (!e.is_string()) throw ParseError(std::string("field '") + key + "' must hold strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

Expr parse_field(const std::string& text, const ParseContext& ctx, const std::string& where) {
  try {
    return parse(text, ctx);
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

}  // namespace

OdeSystem system_from_json(const nlohmann::json& j) {
  OdeSystem s;
  s.m = require_int(j, "m");
  s.order = require_int(j, "order");
  if (s.m < 1 || s.order < 2) throw ShapeError("system needs m >= 1 and order >= 2");
  auto rhs = require_strings(j, "rhs");
  ParseContext ctx{s.m, s.order - 1, true};
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    s.rhs.push_back(parse_field(rhs[i], ctx, "rhs[" + std::to_string(i) + "]"));
  }
  s.validate();
  return s;
}

nlohmann::json to_json(const OdeSystem& sys) {
  nlohmann::json rhs = nlohmann::json::array();
  for (const auto& f : sys.rhs) rhs.push_back(f.str());
  return {{"m", sys.m}, {"order", sys.order}, {"rhs", rhs}};
}

PointMap map_from_json(const nlohmann::json& j) {
  PointMap p;
  p.m = require_int(j, "m");
  if (p.m < 1) throw ShapeError("map needs m >= 1");
  if (!j.contains("x") || !j["x"].is_string()) throw ParseError("missing string field 'x'");
  ParseContext ctx{p.m, 0, true};
  p.x = parse_field(j["x"].get<std::string>(), ctx, "x");
  auto ys = require_strings(j, "y");
  for (std::size_t i = 0; i < ys.size(); ++i) {
    p.y.push_back(parse_field(ys[i], ctx, "y[" + std::to_string(i) + "]"));
  }
  p.validate();
  return p;
}

nlohmann::json to_json(const PointMap& map) {
  nlohmann::json ys = nlohmann::json::array();
  for (const auto& e : map.y) ys.push_back(e.str());
  return {{"m", map.m}, {"x", map.x.str()}, {"y", ys}};
}

}  // namespace odeinv
