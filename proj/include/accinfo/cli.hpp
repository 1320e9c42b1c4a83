#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace accinfo {

/// Exit codes of the command-line frontend.
enum ExitCode : int {
  kExitOk = 0,
  kExitMismatch = 1,
  kExitInput = 2,
  kExitIib = 3,
  kExitIia = 4,
  kExitNotConverged = 5
};

/// Runs one command; `args` excludes the program name. Reports go to `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace accinfo
