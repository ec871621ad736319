#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "symlie/cohomology.hpp"

namespace symlie {

/// Parsed command line: verb plus uniform flags.  Echoed into every report.
struct RunConfig {
  std::string verb;
  std::vector<std::pair<std::string, std::string>> params;  // verb flags, in order
  long long cap = kDefaultCap;
  std::string format = "text";  // text | json | csv
  std::string out_path;         // empty = stdout
  std::string cache_dir;        // empty = no disk cache (env SYMLIE_CACHE)
};

/// Runs a toolkit command.  Exit codes: 0 success, 2 validation error,
/// 3 resource-cap abort.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct SelfcheckMutations {
  bool flip_omega_sign = false;  // test hook: corrupts the omega convention
  long long cap = kDefaultCap;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Embedded identity suite; one result per check.
std::vector<CheckResult> selfcheck(const SelfcheckMutations& mut = {});

}  // namespace symlie
