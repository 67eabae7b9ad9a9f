#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace odeinv::cli {

enum ExitCode : int {
  kTrivializable = 0,
  kNotTrivializable = 1,
  kInputError = 2,
  kUndecided = 3,
  kDegreeLimit = 4,
  /// A library consistency check failed; not an input problem.
  kInternalError = 5,
};

/// Runs one command line. `args` excludes the program name. Reports go to
/// `out`, diagnostics to `err`. Reads ODEINV_MAX_DEGREE from the environment.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace odeinv::cli
