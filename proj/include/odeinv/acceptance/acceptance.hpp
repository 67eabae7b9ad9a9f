#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "odeinv/genwilczynski/genwilczynski.hpp"

namespace odeinv::acceptance {

struct Options {
  std::uint64_t seed = 1;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  /// One line per sub-check, prefixed "ok" or "FAIL".
  std::vector<std::string> details;
};

/// Runs criterion 1..8. Never throws for a failing check; exceptions raised
/// by the library are caught and reported as failures.
CriterionResult run_criterion(int id, const Options& opts);
std::vector<CriterionResult> run_all(const Options& opts);

/// "PASS 3 <title>" / "FAIL 3 <title>".
std::string summary_line(const CriterionResult& r);

/// Checks a convention table against the Fels, Medvedev and Wuenschmann
/// displays on fixed sample systems.
struct ConventionCheck {
  bool ok = false;
  std::vector<std::string> failures;
};
ConventionCheck check_convention(const Convention& conv);

}  // namespace odeinv::acceptance
