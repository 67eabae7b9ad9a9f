#include "odeinv/cli/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "odeinv/acceptance/acceptance.hpp"
#include "odeinv/cohomology/cohomology.hpp"
#include "odeinv/error.hpp"
#include "odeinv/invariants/invariants.hpp"
#include "odeinv/linwilczynski/linwilczynski.hpp"

namespace odeinv::cli {

namespace {

enum class Format { Json, Text };

struct Config {
  Format format = Format::Json;
  std::uint64_t seed = 1;
  std::string convention_file;
  Convention convention = Convention::builtin();
};

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
}

template <class F>
auto in_file(const std::string& path, F&& f) {
  try {
    return f(read_json(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  } catch (const ShapeError& e) {
    throw ShapeError(path + ": " + e.what());
  }
}

void apply_degree_limit() {
  const char* env = std::getenv("ODEINV_MAX_DEGREE");
  if (env == nullptr || *env == '\0') {
    set_degree_limit(0);
    return;
  }
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (*end != '\0') throw ParseError(std::string("ODEINV_MAX_DEGREE is not a number: ") + env);
  set_degree_limit(static_cast<std::uint32_t>(v));
}

// ------------------------------------------------------------------ text

void text_tensor(std::ostream& out, const nlohmann::json& t) {
  out << t["name"].get<std::string>();
  if (!t["degree"].is_null()) out << " (degree " << t["degree"].get<int>() << ")";
  if (t.contains("partial")) out << " [partial]";
  if (t.contains("auxiliary")) out << " [auxiliary]";
  if (t.contains("syntactic_only")) out << " [syntactic]";
  out << (t["is_zero"].get<bool>() ? ": zero\n" : ":\n");
  if (t["is_zero"].get<bool>()) return;
  for (const auto& [label, value] : t["components"].items()) {
    if (value.get<std::string>() == "0") continue;
    out << "  " << (label.empty() ? "-" : label) << " = " << value.get<std::string>() << "\n";
  }
}

void text_verdict(std::ostream& out, const nlohmann::json& v) {
  out << v["equivalence"].get<std::string>() << ": " << v["status"].get<std::string>();
  if (v.contains("syntactic_only")) out << " (syntactic zero tests only)";
  out << "\n";
  for (const auto& w : v["witnesses"]) {
    out << "  witness " << w["invariant"].get<std::string>() << " " << w["component"].get<std::string>() << " = "
        << w["value"].get<std::string>() << "\n";
  }
}

void text_system(std::ostream& out, const nlohmann::json& s) {
  out << "m = " << s["m"] << ", order = " << s["order"] << "\n";
  int i = 1;
  for (const auto& f : s["rhs"]) {
    out << "y" << i << "_" << s["order"] << " = " << f.get<std::string>() << "\n";
    ++i;
  }
}

void text_matrix(std::ostream& out, const nlohmann::json& rows) {
  for (const auto& row : rows) {
    std::string sep;
    out << "[";
    for (const auto& e : row) {
      out << sep << e.get<std::string>();
      sep = ", ";
    }
    out << "]\n";
  }
}

void text_cohomology(std::ostream& out, const nlohmann::json& r) {
  out << "k = " << r["k"] << ", m = " << r["m"] << "\n";
  for (const auto& e : r["entries"]) {
    out << "  H^" << e["q"] << " degree " << e["degree"] << ": " << e["dim"] << " (" << e["source"].get<std::string>()
        << ")\n";
  }
  for (const auto& key : {"consistent", "effective_gl_submodule"}) {
    if (r.contains(key)) out << key << ": " << (r[key].get<bool>() ? "yes" : "no") << "\n";
  }
  for (const auto& key : {"ker_sop1", "ker_sop2"}) {
    if (r.contains(key)) out << key << ": " << r[key] << "\n";
  }
}

// -------------------------------------------------------------- commands

int exit_for(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Trivializable: return kTrivializable;
    case VerdictStatus::NotTrivializable: return kNotTrivializable;
    case VerdictStatus::Undecided: return kUndecided;
  }
  return kUndecided;
}

int cmd_invariants(const Config& cfg, const std::string& file, std::ostream& out) {
  const auto sys = in_file(file, system_from_json);
  nlohmann::json inv = nlohmann::json::array();
  for (const auto& t : all_invariants(sys, cfg.convention)) inv.push_back(to_json(t));
  nlohmann::json ver = nlohmann::json::array();
  for (const auto& v : verdicts(sys, cfg.convention)) ver.push_back(to_json(v));
  if (cfg.format == Format::Json) {
    out << nlohmann::json{{"system", to_json(sys)}, {"invariants", inv}, {"verdicts", ver}}.dump(2) << "\n";
  } else {
    text_system(out, to_json(sys));
    for (const auto& t : inv) text_tensor(out, t);
    for (const auto& v : ver) text_verdict(out, v);
  }
  return 0;
}

int cmd_trivializable(const Config& cfg, const std::string& file, std::ostream& out) {
  const auto sys = in_file(file, system_from_json);
  const auto v = trivializable(sys, cfg.convention);
  if (cfg.format == Format::Json) {
    out << to_json(v).dump(2) << "\n";
  } else {
    text_verdict(out, to_json(v));
  }
  return exit_for(v.status);
}

int cmd_transform(const Config& cfg, const std::string& map_file, const std::string& sys_file, std::ostream& out) {
  const auto map = in_file(map_file, map_from_json);
  const auto sys = in_file(sys_file, system_from_json);
  if (map.m != sys.m) throw ShapeError("map and system have different m");
  const auto j = to_json(pullback(map, sys));
  if (cfg.format == Format::Json) {
    out << j.dump(2) << "\n";
  } else {
    text_system(out, j);
  }
  return 0;
}

int cmd_prolong(const Config& cfg, const std::string& map_file, int up_to, const std::string& sys_file,
                std::ostream& out) {
  const auto map = in_file(map_file, map_from_json);
  if (up_to < 0) throw ShapeError("prolongation order must be >= 0");
  std::vector<std::vector<Expr>> ybar;
  if (sys_file.empty()) {
    ybar = prolong(map, up_to);
  } else {
    const auto sys = in_file(sys_file, system_from_json);
    if (map.m != sys.m) throw ShapeError("map and system have different m");
    ybar = prolong(map, sys, up_to);
  }
  nlohmann::json j = nlohmann::json::array();
  for (const auto& comp : ybar) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& e : comp) row.push_back(e.str());
    j.push_back(row);
  }
  if (cfg.format == Format::Json) {
    out << nlohmann::json{{"map", to_json(map)}, {"up_to", up_to}, {"ybar", j}}.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < ybar.size(); ++i) {
      for (std::size_t s = 0; s < ybar[i].size(); ++s) {
        out << "Y" << i + 1 << "_" << s << " = " << ybar[i][s].str() << "\n";
      }
    }
  }
  return 0;
}

int cmd_theta(const Config& cfg, const std::string& file, int r, std::ostream& out) {
  const auto op = in_file(file, op_from_json);
  const auto j = to_json(theta(op, r));
  if (cfg.format == Format::Json) {
    out << nlohmann::json{{"r", r}, {"theta", j}}.dump(2) << "\n";
  } else {
    out << "Theta_" << r << " =\n";
    text_matrix(out, j);
  }
  return 0;
}

int cmd_cohomology(const Config& cfg, int k, int m, bool serial, std::ostream& out) {
  if (k < 1 || m < 1) throw ShapeError("cohomology needs k >= 1 and m >= 1");
  const auto j = cohomology_report(k, m, serial ? linalg::Exec::Serial : linalg::Exec::Parallel);
  if (cfg.format == Format::Json) {
    out << j.dump(2) << "\n";
  } else {
    text_cohomology(out, j);
  }
  return 0;
}

int cmd_selftest(const Config& cfg, const std::vector<int>& only, bool verbose, std::ostream& out) {
  const acceptance::Options opts{cfg.seed};
  std::vector<acceptance::CriterionResult> results;
  if (only.empty()) {
    results = acceptance::run_all(opts);
  } else {
    for (int id : only) {
      if (id < 1 || id > 8) throw ShapeError("criteria are numbered 1..8");
      results.push_back(acceptance::run_criterion(id, opts));
    }
  }
  const auto conv = acceptance::check_convention(cfg.convention);
  bool ok = conv.ok;
  for (const auto& r : results) ok = ok && r.pass;
  if (cfg.format == Format::Json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results) {
      arr.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"details", r.details}});
    }
    out << nlohmann::json{{"seed", cfg.seed},
                          {"convention", {{"ok", conv.ok}, {"failures", conv.failures}}},
                          {"criteria", arr},
                          {"pass", ok}}
               .dump(2)
        << "\n";
  } else {
    out << (conv.ok ? "PASS" : "FAIL") << " convention table\n";
    for (const auto& f : conv.failures) out << "  " << f << "\n";
    for (const auto& r : results) {
      out << acceptance::summary_line(r) << "\n";
      if (verbose || !r.pass) {
        for (const auto& d : r.details) out << "  " << d << "\n";
      }
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Differential invariants of ODE systems, exact arithmetic", "odeinv"};
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  std::string format = "json";
  app.add_option("--format", format, "Output format (json or text)")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", cfg.seed, "Seed for the randomized self-test checks");
  app.add_option("--convention", cfg.convention_file, "Convention table (JSON)");

  std::string file_a;
  std::string file_b;
  int int_a = 0;
  int int_b = 0;
  bool serial = false;
  bool verbose = false;
  std::vector<int> only;

  auto* inv = app.add_subcommand("invariants", "All applicable invariants of a system");
  inv->add_option("system", file_a, "System file")->required();
  auto* triv = app.add_subcommand("trivializable", "Decide trivializability (exit 0 yes, 1 no, 3 undecided)");
  triv->add_option("system", file_a, "System file")->required();
  auto* trans = app.add_subcommand("transform", "Pull a system back along a point map");
  trans->add_option("map", file_a, "Map file")->required();
  trans->add_option("system", file_b, "System file")->required();
  auto* prol = app.add_subcommand("prolong", "Prolong a point map");
  prol->add_option("map", file_a, "Map file")->required();
  prol->add_option("--order", int_a, "Highest jet order")->required();
  prol->add_option("--system", file_b, "Replace top jets through this system");
  auto* th = app.add_subcommand("theta", "Theta_r of a linear operator in Laguerre-Forsyth form");
  th->add_option("operator", file_a, "Operator file")->required();
  th->add_option("r", int_a, "Index r")->required();
  auto* coh = app.add_subcommand("cohomology", "Cohomology report for g(k, m)");
  coh->add_option("k", int_a, "k")->required();
  coh->add_option("m", int_b, "m")->required();
  coh->add_flag("--serial", serial, "Use the serial elimination kernel");
  auto* self = app.add_subcommand("selftest", "Run the acceptance suite");
  self->add_option("--criterion", only, "Run only these criteria");
  self->add_flag("--verbose", verbose, "Print every sub-check");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kInputError;
  }

  cfg.format = format == "text" ? Format::Text : Format::Json;
  try {
    apply_degree_limit();
    if (!cfg.convention_file.empty()) {
      cfg.convention = in_file(cfg.convention_file, convention_from_json);
      const auto check = acceptance::check_convention(cfg.convention);
      if (!check.ok) {
        err << "error: convention table fails validation:\n";
        for (const auto& f : check.failures) err << "  " << f << "\n";
        return kInputError;
      }
    }
    if (*inv) return cmd_invariants(cfg, file_a, out);
    if (*triv) return cmd_trivializable(cfg, file_a, out);
    if (*trans) return cmd_transform(cfg, file_a, file_b, out);
    if (*prol) return cmd_prolong(cfg, file_a, int_a, file_b, out);
    if (*th) return cmd_theta(cfg, file_a, int_a, out);
    if (*coh) return cmd_cohomology(cfg, int_a, int_b, serial, out);
    if (*self) return cmd_selftest(cfg, only, verbose, out);
  } catch (const DegreeLimitExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kDegreeLimit;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const ShapeError& e) {
    err << "shape error: " << e.what() << "\n";
    return kInputError;
  } catch (const DivisionByZero& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInputError;
}

}  // namespace odeinv::cli
