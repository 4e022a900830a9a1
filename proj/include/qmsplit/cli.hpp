#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qmsplit {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

/// Parses `args` (without the program name), runs the command and writes the
/// JSON report to `out` (or the --out file).  Diagnostics go to `err`.
/// Returns kExitOk, kExitFailure for computation errors and failed suites,
/// kExitUsage for configuration and command-line errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qmsplit
