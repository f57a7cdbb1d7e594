#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nieval {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitDomain = 3,
};

/// Runs the `nieval` command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nieval
