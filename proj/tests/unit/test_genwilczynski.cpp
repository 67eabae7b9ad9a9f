#include <gtest/gtest.h>

#include <random>

#include "odeinv/error.hpp"
#include "odeinv/genwilczynski/genwilczynski.hpp"
#include "test_support.hpp"

using namespace odeinv;
using odeinv::testing::P;

namespace {

OdeSystem sys(int m, int order, std::vector<std::string> rhs) {
  OdeSystem s;
  s.m = m;
  s.order = order;
  for (auto& r : rhs) s.rhs.push_back(P(r, m, order - 1));
  s.validate();
  return s;
}

OdeSystem random_system(std::mt19937_64& rng, int m, int order, int deg = 2, int terms = 4) {
  OdeSystem s = OdeSystem::trivial(m, order);
  auto vars = odeinv::testing::jet_vars(m, order - 1);
  for (auto& f : s.rhs) f = odeinv::testing::random_poly(rng, vars, deg, terms);
  return s;
}

// Jacobian blocks written out independently of linearize().
MatrixExpr jac(const OdeSystem& s, int r) {
  MatrixExpr a(static_cast<std::size_t>(s.m), static_cast<std::size_t>(s.m));
  for (int i = 0; i < s.m; ++i) {
    for (int j = 0; j < s.m; ++j) a(i, j) = s.rhs[i].partial(VarId::jet(j + 1, r));
  }
  return a;
}

MatrixExpr D(const MatrixExpr& a, const OdeSystem& s) { return total_derivative(a, s); }

MatrixExpr tfp(const MatrixExpr& a) {
  Expr t = a.trace() / Expr(static_cast<long>(a.rows()));
  return a - MatrixExpr::scalar(a.rows(), t);
}

MatrixExpr fels_w2(const OdeSystem& s) {
  auto a0 = jac(s, 0);
  auto a1 = jac(s, 1);
  return tfp(a0 - Expr::rational(1, 2) * D(a1, s) + Expr::rational(1, 4) * (a1 * a1));
}

MatrixExpr medvedev_inner(const OdeSystem& s) {
  auto a1 = jac(s, 1);
  auto a2 = jac(s, 2);
  return a1 - D(a2, s) + Expr::rational(1, 3) * (a2 * a2);
}

MatrixExpr medvedev_w2(const OdeSystem& s) { return tfp(medvedev_inner(s)); }

MatrixExpr medvedev_w3(const OdeSystem& s) {
  auto a0 = jac(s, 0);
  auto a1 = jac(s, 1);
  auto a2 = jac(s, 2);
  const auto m = static_cast<long>(s.m);
  Expr hx = Expr::rational(-1, 4 * m) * medvedev_inner(s).trace();
  auto da2 = D(a2, s);
  return a0 + Expr::rational(1, 3) * (a2 * a1) - D(a1, s) + Expr::rational(2, 3) * D(da2, s) +
         Expr::rational(2, 27) * (a2 * a2 * a2) - Expr::rational(4, 9) * (a2 * da2) -
         Expr::rational(2, 9) * (da2 * a2) -
         MatrixExpr::scalar(static_cast<std::size_t>(m), Expr(2) * total_derivative(hx, s));
}

Expr wunschmann(const OdeSystem& s) {
  const Expr& f = s.rhs[0];
  auto p = [&](const Expr& e, int r) { return e.partial(VarId::jet(1, r)); };
  auto dx = [&](const Expr& e) { return total_derivative(e, s); };
  Expr f2 = p(f, 2);
  return -p(f, 0) - Expr::rational(1, 3) * p(f, 1) * f2 - Expr::rational(2, 27) * f2.pow(3) +
         Expr::rational(1, 2) * dx(p(f, 1)) + Expr::rational(1, 3) * f2 * dx(f2) -
         Expr::rational(1, 6) * dx(dx(f2));
}

bool proportional(const MatrixExpr& a, const MatrixExpr& b, const Expr& c) {
  return (a - c * b).is_zero(true);
}

}  // namespace

TEST(Linearize, Examples) {
  auto op = linearize(sys(2, 2, {"y2_0", "0"}));
  EXPECT_EQ(-op.coeffs[0], P("0") * MatrixExpr::zero(2) + [] {
    MatrixExpr a(2, 2);
    a(0, 1) = Expr(1);
    return a;
  }());
  EXPECT_TRUE(op.coeffs[1].is_zero());
  auto op3 = linearize(sys(1, 3, {"y1_0"}));
  EXPECT_EQ(op3.coeffs[0](0, 0), Expr(-1));
  EXPECT_TRUE(op3.coeffs[1].is_zero());
  EXPECT_TRUE(op3.coeffs[2].is_zero());
  for (const auto& c : linearize(OdeSystem::trivial(2, 4)).coeffs) EXPECT_TRUE(c.is_zero());
}

TEST(GaugeReduce, ScalarSecondOrder) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 5; ++t) {
    auto s = random_system(rng, 1, 2, 3, 5);
    auto st = gauge_reduce(s);
    auto a0 = jac(s, 0);
    auto a1 = jac(s, 1);
    auto expect = Expr::rational(1, 2) * D(a1, s) - Expr::rational(1, 4) * (a1 * a1) - a0;
    EXPECT_EQ(st.q[0], expect);
    EXPECT_TRUE(st.q[1].is_zero());
    EXPECT_EQ(st.q[2], MatrixExpr::identity(1));
  }
}

TEST(GaugeReduce, ThirdOrderCoefficient) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 3; ++t) {
    auto s = random_system(rng, 2, 3);
    auto st = gauge_reduce(s);
    auto a1 = jac(s, 1);
    auto a2 = jac(s, 2);
    // The twisted derivative of A_2 is the plain one: [A_2, A_2/3] = 0.
    EXPECT_EQ(st.q[1], D(a2, s) - Expr::rational(1, 3) * (a2 * a2) - a1);
    EXPECT_TRUE(st.q[2].is_zero());
  }
}

TEST(GaugeReduce, TrivialSystem) {
  auto st = gauge_reduce(OdeSystem::trivial(2, 4));
  for (int j = 0; j < 4; ++j) EXPECT_TRUE(st.q[j].is_zero());
  EXPECT_EQ(st.q[4], MatrixExpr::identity(2));
}

TEST(GaugeReduce, WrongPhiSignLeavesTopCoefficient) {
  Convention c = Convention::builtin();
  c.phi_sign = -1;
  EXPECT_THROW(gauge_reduce(sys(2, 3, {"y1_2^2", "y2_2*x"}), c), ConventionError);
}

TEST(TraceNormalize, AlreadyNormalizedInputIsUnchanged) {
  // Linear LF system with constant coefficients: rho has nothing to absorb.
  auto s = sys(2, 3, {"y2_1 + y1_0", "-y1_1"});
  auto st = trace_normalize(gauge_reduce(s), s);
  // R_j agree with Q_j once rho is set to zero.
  for (int j = 0; j <= 3; ++j) {
    MatrixExpr at_zero = st.r_hat[j].map([](const Expr& e) { return e.substitute(rho_symbol(), Expr()); });
    EXPECT_EQ(at_zero, st.q[j]) << j;
  }
}

TEST(TraceNormalize, ScalarSecondOrderRemovesTrace) {
  std::mt19937_64 rng(4);
  auto s = random_system(rng, 1, 2, 3, 5);
  auto st = trace_normalize(gauge_reduce(s), s);
  EXPECT_TRUE(st.r_hat[0].trace().is_zero(true));
  EXPECT_TRUE(wilczynski(s, 2).raw.is_zero());
}

TEST(Wilczynski, Examples) {
  auto w = wilczynski(sys(2, 2, {"y2_0", "0"}), 2);
  MatrixExpr e(2, 2);
  e(0, 1) = Expr(1);
  EXPECT_EQ(w.rescaled, e);
  auto w3 = wilczynski(sys(1, 3, {"y1_0"}), 3);
  EXPECT_EQ(w3.raw(0, 0), Expr(-12));
  for (int order = 2; order <= 5; ++order) {
    for (const auto& r : wilczynski_all(OdeSystem::trivial(2, order))) EXPECT_TRUE(r.raw.is_zero());
  }
}

TEST(Wilczynski, OrderOutOfRange) {
  EXPECT_THROW(wilczynski(OdeSystem::trivial(1, 3), 4), ShapeError);
  EXPECT_THROW(wilczynski(OdeSystem::trivial(1, 3), 1), ShapeError);
}

TEST(Oracle, FelsSecondOrder) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 5; ++t) {
    auto s = random_system(rng, 2, 2, 3, 5);
    auto w = wilczynski(s, 2);
    EXPECT_TRUE(proportional(w.raw, fels_w2(s), Expr(-2)));
    EXPECT_EQ(w.rescaled, fels_w2(s));
  }
}

TEST(Oracle, MedvedevW2) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 5; ++t) {
    auto s = random_system(rng, 2, 3, 3, 5);
    EXPECT_EQ(wilczynski(s, 2).rescaled, medvedev_w2(s));
  }
}

TEST(Oracle, Wunschmann) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 5; ++t) {
    auto s = random_system(rng, 1, 3, 3, 5);
    EXPECT_EQ(wilczynski(s, 3).raw(0, 0), Expr(12) * wunschmann(s));
  }
}

TEST(Oracle, MedvedevW3AgreesModuloDerivativeOfW2) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 5; ++t) {
    auto s = random_system(rng, 2, 3, 2, 5);
    auto st = trace_normalize(gauge_reduce(s), s);
    auto w3 = wilczynski(s, 3).raw;
    auto w2 = medvedev_w2(s);
    MatrixExpr expect = Expr(-12) * medvedev_w3(s) - Expr(6) * twisted_derivative(st, s, w2);
    EXPECT_EQ(w3, expect);
  }
}

TEST(Oracle, LeftSideMatchesNothingForW3) {
  Convention left = Convention::builtin();
  left.side = CommutatorSide::Left;
  auto s = sys(2, 3, {"y1_2*y2_2 + y2_1", "y1_2^2 + x*y1_0"});
  auto w3 = wilczynski(s, 3, left).raw;
  auto ref = medvedev_w3(s);
  // Proportional matrices have all cross products a_i b_j - a_j b_i zero.
  bool all_cross_zero = true;
  const auto& a = w3.entries();
  const auto& b = ref.entries();
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (!(a[i] * b[j] - a[j] * b[i]).is_zero()) all_cross_zero = false;
    }
  }
  EXPECT_FALSE(all_cross_zero);
}

TEST(LaguerreForsyth, RawOutputEqualsTheta) {
  // f = -P_0 y - P_1 y' with tr P_1 = 0 and P_2 = 0, x-dependent coefficients.
  auto s = sys(2, 3, {"-x*y1_0 - y2_0 - x^2*y1_1 - y2_1", "-y1_0 + 3*y2_0 - y1_1 + x^2*y2_1"});
  LinDiffOp op = LinDiffOp::zero(2, 3);
  op.coeffs[0](0, 0) = P("x");
  op.coeffs[0](0, 1) = P("1");
  op.coeffs[0](1, 0) = P("1");
  op.coeffs[0](1, 1) = P("-3");
  op.coeffs[1](0, 0) = P("x^2");
  op.coeffs[1](0, 1) = P("1");
  op.coeffs[1](1, 0) = P("1");
  op.coeffs[1](1, 1) = P("-x^2");
  ASSERT_TRUE(lf_check(op).laguerre_forsyth);
  for (int r = 2; r <= 3; ++r) EXPECT_EQ(wilczynski(s, r).raw, theta(op, r)) << r;
}

TEST(Properties, RhoCancelsAndW2IsTraceFree) {
  std::mt19937_64 rng(20);
  for (int order = 2; order <= 5; ++order) {
    for (int t = 0; t < 2; ++t) {
      auto s = random_system(rng, 2, order, 2, 4);
      auto all = wilczynski_all(s);
      for (const auto& w : all) EXPECT_FALSE(w.raw.has_aux());
      EXPECT_TRUE(all[0].raw.trace().is_zero());
    }
  }
}

TEST(ReductionState, SerializesToJson) {
  auto s = sys(2, 3, {"y1_2^2", "x"});
  auto j = to_json(trace_normalize(gauge_reduce(s), s));
  EXPECT_EQ(j["k"], 2);
  EXPECT_EQ(j["r_hat"].size(), 4u);
  EXPECT_EQ(j["convention"]["side"], "right");
}

TEST(ConventionFile, RoundTrip) {
  auto c = Convention::builtin();
  EXPECT_EQ(convention_from_json(to_json(c)), c);
  EXPECT_THROW(convention_from_json(nlohmann::json::parse(R"({"side": "up"})")), ParseError);
}

TEST(Vanishing, PointMapsOfTrivialSystems) {
  struct Case {
    int m;
    std::string x;
    std::vector<std::string> y;
  };
  std::vector<Case> maps = {
      {2, "x", {"y1_0 + x^2", "y2_0"}},
      {2, "x", {"y1_0 + y2_0", "2*y2_0 - y1_0"}},
      {2, "x + y1_0", {"y1_0", "y2_0"}},
      {1, "y1_0", {"x"}},
      {1, "x", {"y1_0*x + x^3"}},
  };
  for (int order = 2; order <= 5; ++order) {
    for (const auto& c : maps) {
      PointMap p;
      p.m = c.m;
      p.x = P(c.x, c.m, 0);
      for (auto& e : c.y) p.y.push_back(P(e, c.m, 0));
      auto s = pullback(p, OdeSystem::trivial(c.m, order));
      for (const auto& w : wilczynski_all(s)) {
        EXPECT_TRUE(w.raw.is_zero()) << "order " << order << " map " << c.x << " r=" << w.r;
      }
    }
  }
}
