#pragma once

#include <random>
#include <string>
#include <vector>

#include "odeinv/expr/expr.hpp"

namespace odeinv::testing {

/// Random polynomial with small integer coefficients in the given variables.
inline Expr random_poly(std::mt19937_64& rng, const std::vector<VarId>& vars, int max_deg = 2,
                        int terms = 4, int coeff = 3) {
  std::uniform_int_distribution<int> c(-coeff, coeff);
  std::uniform_int_distribution<int> d(0, max_deg);
  std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
  Expr e;
  for (int t = 0; t < terms; ++t) {
    Expr mono(c(rng));
    int deg = d(rng);
    for (int i = 0; i < deg; ++i) mono *= Expr::variable(vars[pick(rng)]);
    e += mono;
  }
  return e;
}

inline Expr random_rational(std::mt19937_64& rng, const std::vector<VarId>& vars) {
  Expr den = random_poly(rng, vars, 1, 2);
  if (den.is_syntactic_zero()) den = Expr(1);
  return random_poly(rng, vars) / (den + Expr(7));
}

inline std::vector<VarId> jet_vars(int m, int max_order, bool with_x = true) {
  std::vector<VarId> out;
  if (with_x) out.push_back(VarId::x());
  for (int i = 1; i <= m; ++i) {
    for (int r = 0; r <= max_order; ++r) out.push_back(VarId::jet(i, r));
  }
  return out;
}

inline Expr P(const std::string& s, int m = 3, int order = 6) {
  return parse(s, ParseContext{m, order, true});
}

}  // namespace odeinv::testing
