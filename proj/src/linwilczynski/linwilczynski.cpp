#include "odeinv/linwilczynski/linwilczynski.hpp"

#include "odeinv/error.hpp"

namespace odeinv {

namespace {

mpz_class factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

}  // namespace

Derivation Derivation::d_dx() {
  return {"d/dx", [](const Expr& e) {
            return apply_derivation(e, [](const VarId& v) -> std::optional<Expr> {
              if (v.is_x()) return Expr(1);
              return std::nullopt;
            });
          }};
}

Derivation Derivation::total(const OdeSystem& sys) {
  return {"total", [sys](const Expr& e) { return total_derivative(e, sys); }};
}

LinDiffOp LinDiffOp::zero(int m, int order) {
  LinDiffOp op;
  op.m = m;
  op.order = order;
  op.coeffs.assign(static_cast<std::size_t>(order), MatrixExpr::zero(static_cast<std::size_t>(m)));
  return op;
}

void LinDiffOp::validate() const {
  if (m < 1 || order < 2) throw ShapeError("operator needs m >= 1 and order >= 2");
  if (coeffs.size() != static_cast<std::size_t>(order)) {
    throw ShapeError("operator of order " + std::to_string(order) + " needs " +
                     std::to_string(order) + " coefficient matrices, got " +
                     std::to_string(coeffs.size()));
  }
  for (const auto& c : coeffs) {
    if (c.rows() != static_cast<std::size_t>(m) || c.cols() != static_cast<std::size_t>(m)) {
      throw ShapeError("coefficient matrices must be " + std::to_string(m) + "x" +
                       std::to_string(m));
    }
  }
}

LfStatus lf_check(const LinDiffOp& op) {
  op.validate();
  const auto k = static_cast<std::size_t>(op.k());
  LfStatus s;
  s.semi_canonical = op.coeffs[k].is_zero(true);
  s.laguerre_forsyth = s.semi_canonical && op.coeffs[k - 1].trace().is_zero(true);
  return s;
}

std::vector<ThetaTerm> theta_terms(int k, int r) {
  if (r < 2 || r > k + 1) {
    throw ShapeError("Theta_r needs 2 <= r <= k+1 (k=" + std::to_string(k) + ", r=" +
                     std::to_string(r) + ")");
  }
  std::vector<ThetaTerm> out;
  for (int j = 1; j <= r - 1; ++j) {
    ThetaTerm t;
    t.num = factorial(2 * r - j - 1) * factorial(k - r + j);
    if (j % 2 == 0) t.num = -t.num;
    t.den = factorial(r - j) * factorial(j - 1);
    t.index = k - r + j;
    t.derivatives = j - 1;
    out.push_back(t);
  }
  return out;
}

MatrixExpr theta(const LinDiffOp& op, int r) {
  auto terms = theta_terms(op.k(), r);
  if (!lf_check(op).laguerre_forsyth) {
    throw ShapeError("Theta_r needs an operator in Laguerre-Forsyth form");
  }
  MatrixExpr acc = MatrixExpr::zero(static_cast<std::size_t>(op.m));
  for (const auto& t : terms) {
    MatrixExpr p = op.coeffs[static_cast<std::size_t>(t.index)];
    for (int d = 0; d < t.derivatives; ++d) p = op.deriv(p);
    acc += Expr::rational(t.num, t.den) * p;
  }
  return acc;
}

LinDiffOp op_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("order") || !j.contains("coeffs") ||
      !j["m"].is_number_integer() || !j["order"].is_number_integer() || !j["coeffs"].is_array()) {
    throw ParseError("operator file needs integer 'm', 'order' and array 'coeffs'");
  }
  LinDiffOp op;
  op.m = j["m"].get<int>();
  op.order = j["order"].get<int>();
  if (op.m < 1 || op.order < 2) throw ShapeError("operator needs m >= 1 and order >= 2");
  ParseContext ctx{op.m, op.order - 1, true};
  const auto m = static_cast<std::size_t>(op.m);
  for (const auto& mat : j["coeffs"]) {
    if (!mat.is_array() || mat.size() != m) throw ShapeError("coefficient matrix must have m rows");
    MatrixExpr a(m, m);
    for (std::size_t r = 0; r < m; ++r) {
      if (!mat[r].is_array() || mat[r].size() != m) {
        throw ShapeError("coefficient matrix rows must have m entries");
      }
      for (std::size_t c = 0; c < m; ++c) {
        if (!mat[r][c].is_string()) throw ParseError("matrix entries must be strings");
        a(r, c) = parse(mat[r][c].get<std::string>(), ctx);
      }
    }
    op.coeffs.push_back(std::move(a));
  }
  op.validate();
  return op;
}

nlohmann::json to_json(const MatrixExpr& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < a.cols(); ++c) row.push_back(a(r, c).str());
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json to_json(const LinDiffOp& op) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : op.coeffs) coeffs.push_back(to_json(c));
  return {{"m", op.m}, {"order", op.order}, {"coeffs", coeffs}};
}

}  // namespace odeinv
