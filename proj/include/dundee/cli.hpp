#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dundee {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitOther = 1,
  kExitUsage = 2,
  kExitNotation = 3,
  kExitSizeGuard = 4,
  kExitDomain = 5,
  kExitVerification = 6,
};

/// Runs one command line (without the program name) and returns its exit
/// code. Results go to `out`, diagnostics to `err`.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dundee
