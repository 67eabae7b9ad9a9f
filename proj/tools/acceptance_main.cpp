// Prints one PASS/FAIL line per acceptance criterion. Exit status is the
// number of failing criteria (capped at 8).
#include <cstdlib>
#include <iostream>
#include <string>

#include "odeinv/acceptance/acceptance.hpp"

int main(int argc, char** argv) {
  odeinv::acceptance::Options opts;
  bool verbose = false;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--verbose") {
      verbose = true;
    } else if (a == "--seed" && i + 1 < argc) {
      opts.seed = std::strtoull(argv[++i], nullptr, 10);
    } else {
      std::cerr << "usage: acceptance [--seed N] [--verbose]\n";
      return 64;
    }
  }
  const auto conv = odeinv::acceptance::check_convention(odeinv::Convention::builtin());
  std::cout << (conv.ok ? "PASS" : "FAIL") << " 0 built-in convention table\n";
  for (const auto& f : conv.failures) std::cout << "  " << f << "\n";
  int failures = 0;
  for (int id = 1; id <= 8; ++id) {
    const auto r = odeinv::acceptance::run_criterion(id, opts);
    std::cout << odeinv::acceptance::summary_line(r) << std::endl;
    if (!r.pass) ++failures;
    if (verbose || !r.pass) {
      for (const auto& d : r.details) std::cout << "  " << d << "\n";
    }
  }
  return failures;
}
