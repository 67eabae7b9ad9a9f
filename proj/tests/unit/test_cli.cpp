#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"
#include "odeinv/acceptance/acceptance.hpp"
#include "odeinv/cli/cli.hpp"
#include "odeinv/expr/poly.hpp"

namespace {

std::string data(const std::string& name) { return std::string(ODEINV_TEST_DATA) + "/" + name; }

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = odeinv::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Runs the installed binary in a shell and returns its exit status.
int run_binary(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(ODEINV_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class DegreeLimitGuard {
 public:
  explicit DegreeLimitGuard(const char* value) { setenv("ODEINV_MAX_DEGREE", value, 1); }
  ~DegreeLimitGuard() {
    unsetenv("ODEINV_MAX_DEGREE");
    odeinv::set_degree_limit(0);
  }
};

}  // namespace

TEST(Cli, InvariantsOfTheTrivialSystemAreAllZero) {
  auto r = run({"invariants", data("trivial_m2_o4.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  ASSERT_FALSE(j["invariants"].empty());
  for (const auto& t : j["invariants"]) EXPECT_TRUE(t["is_zero"].get<bool>()) << t["name"];
}

TEST(Cli, InvariantsListTheI2Component) {
  auto r = run({"invariants", data("i2_witness.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  bool found = false;
  for (const auto& t : j["invariants"]) {
    if (t["name"] == "I_2") {
      found = true;
      EXPECT_FALSE(t["is_zero"].get<bool>());
      EXPECT_EQ(t["components"]["1;22"], "2");
    }
  }
  EXPECT_TRUE(found);
}

TEST(Cli, MalformedExpressionReportsThePosition) {
  auto r = run({"invariants", data("malformed.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("position 6"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, ShapeErrorsAndMissingFilesExitTwo) {
  EXPECT_EQ(run({"trivializable", data("wrong_shape.json")}).code, 2);
  EXPECT_EQ(run({"trivializable", data("no_such_file.json")}).code, 2);
  EXPECT_EQ(run({"theta", data("zero_op_o3.json"), "7"}).code, 2);
  EXPECT_EQ(run({"cohomology", "0", "2"}).code, 2);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"--format", "xml", "trivializable", data("trivial_m2_o4.json")}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, TrivializableExitCodes) {
  EXPECT_EQ(run({"trivializable", data("trivial_m2_o4.json")}).code, 0);
  EXPECT_EQ(run({"trivializable", data("pullback_swap_m1_o3.json")}).code, 0);
  EXPECT_EQ(run({"trivializable", data("pullback_mixed_m2_o4.json")}).code, 0);
  auto r = run({"trivializable", data("i2_witness.json")});
  EXPECT_EQ(r.code, 1);
  auto j = nlohmann::json::parse(r.out);
  ASSERT_FALSE(j["witnesses"].empty());
  EXPECT_EQ(j["witnesses"][0]["invariant"], "I_2");
  EXPECT_EQ(run({"trivializable", data("conics_o5.json")}).code, 3);
}

TEST(Cli, TransformOfTheParabolaMap) {
  auto r = run({"transform", data("map_parabola.json"), data("trivial_m1_o2.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rhs"][0], "-2");
  EXPECT_EQ(run({"transform", data("map_parabola.json"), data("trivial_m2_o4.json")}).code, 2);
}

TEST(Cli, TransformReproducesTheCorpusFile) {
  auto r = run({"transform", data("map_mixed_m2.json"), data("trivial_m2_o4.json")});
  ASSERT_EQ(r.code, 0);
  std::ifstream in(data("pullback_mixed_m2_o4.json"));
  EXPECT_EQ(nlohmann::json::parse(r.out), nlohmann::json::parse(in));
}

TEST(Cli, ProlongOfTheParabolaMap) {
  auto r = run({"prolong", data("map_parabola.json"), "--order", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["ybar"][0][1], "y1_1 + 2*x");
  EXPECT_EQ(j["ybar"][0][2], "y1_2 + 2");
  auto s = run({"prolong", data("map_parabola.json"), "--order", "2", "--system", data("trivial_m1_o2.json")});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(nlohmann::json::parse(s.out)["ybar"][0][2], "2");
}

TEST(Cli, ThetaOfTheZeroOperator) {
  auto r = run({"theta", data("zero_op_o3.json"), "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["theta"], nlohmann::json::parse(R"([["0","0"],["0","0"]])"));
}

TEST(Cli, CohomologyReportHasTheEffectiveDegreeTwoPart) {
  auto r = run({"cohomology", "3", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  int eff = -1;
  for (const auto& e : j["entries"]) {
    if (e["source"] == "effective" && e["degree"] == 2) eff = e["dim"].get<int>();
  }
  EXPECT_EQ(eff, 6);
  EXPECT_EQ(run({"cohomology", "3", "2", "--serial"}).out, r.out);
}

TEST(Cli, TextFormat) {
  auto r = run({"--format", "text", "trivializable", data("i2_witness.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("witness I_2 1;22 = 2"), std::string::npos) << r.out;
  auto t = run({"trivializable", data("i2_witness.json"), "--format", "text"});
  EXPECT_EQ(t.out, r.out);
}

TEST(Cli, OutputIsDeterministic) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"invariants", data("pullback_mixed_m2_o4.json")},
           {"invariants", data("conics_o5.json")},
           {"cohomology", "4", "2"}}) {
    auto a = run(args);
    auto b = run(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, DegreeLimitExitsFour) {
  {
    DegreeLimitGuard guard("3");
    auto r = run({"invariants", data("high_degree.json")});
    EXPECT_EQ(r.code, 4);
    EXPECT_NE(r.err.find("ODEINV_MAX_DEGREE"), std::string::npos);
  }
  EXPECT_EQ(run({"invariants", data("high_degree.json")}).code, 0);
  {
    DegreeLimitGuard guard("many");
    EXPECT_EQ(run({"invariants", data("trivial_m1_o2.json")}).code, 2);
  }
}

TEST(Cli, ConventionFileIsValidated) {
  const std::string path = testing::TempDir() + "odeinv_builtin_convention.json";
  {
    std::ofstream out(path);
    out << odeinv::to_json(odeinv::Convention::builtin()).dump();
  }
  EXPECT_EQ(run({"--convention", path, "trivializable", data("i2_witness.json")}).code, 1);
  auto r = run({"--convention", data("convention_left.json"), "trivializable", data("i2_witness.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("fails validation"), std::string::npos);
}

TEST(Cli, SelftestRunsSelectedCriteria) {
  auto r = run({"--format", "text", "selftest", "--criterion", "5", "--criterion", "7"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("PASS 5 detection"), std::string::npos);
  EXPECT_NE(r.out.find("PASS 7 diagram commutativity"), std::string::npos);
  EXPECT_NE(r.out.find("PASS convention table"), std::string::npos);
  auto j = nlohmann::json::parse(run({"selftest", "--criterion", "8", "--seed", "9"}).out);
  EXPECT_EQ(j["seed"], 9);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(run({"selftest", "--criterion", "9"}).code, 2);
}

TEST(Cli, SelftestFailsWhenACriterionFails) {
  // Criterion 3 compares against a display that is not proportional to W_3.
  auto r = run({"--format", "text", "selftest", "--criterion", "3"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL 3 oracle equality"), std::string::npos);
}

TEST(CliBinary, ExitCodeContract) {
  EXPECT_EQ(run_binary("trivializable " + data("trivial_m2_o4.json")), 0);
  EXPECT_EQ(run_binary("trivializable " + data("i2_witness.json")), 1);
  EXPECT_EQ(run_binary("trivializable " + data("malformed.json")), 2);
  EXPECT_EQ(run_binary("trivializable " + data("conics_o5.json")), 3);
  EXPECT_EQ(run_binary("invariants " + data("high_degree.json"), "ODEINV_MAX_DEGREE=3"), 4);
}

TEST(Convention, BuiltinTablePassesAndAlteredTablesFail) {
  using odeinv::acceptance::check_convention;
  auto conv = odeinv::Convention::builtin();
  EXPECT_TRUE(check_convention(conv).ok);
  auto left = conv;
  left.side = odeinv::CommutatorSide::Left;
  EXPECT_FALSE(check_convention(left).ok);
  auto flipped = conv;
  flipped.phi_sign = -1;
  EXPECT_FALSE(check_convention(flipped).ok);
  auto scaled = conv;
  scaled.lambda[{2, 2}] = 2;
  auto res = check_convention(scaled);
  ASSERT_EQ(res.failures.size(), 1U);
  EXPECT_NE(res.failures[0].find("Fels"), std::string::npos);
}
