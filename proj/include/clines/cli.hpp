#pragma once

#include <iosfwd>

namespace clines {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitHypothesisFail = 1,
  kExitConfigError = 2,
  kExitBlowup = 3,
  kExitNoBrackets = 4,
};

/// Entry point of the `clines` tool, callable in-process.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace clines
