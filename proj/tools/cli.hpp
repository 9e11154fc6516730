#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gegtau::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_verification_failed = 1,
  exit_usage = 2,
  exit_numerical = 3,
};

/// Runs the command line `args` (without the program name). Primary output
/// goes to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gegtau::cli
