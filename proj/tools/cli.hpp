#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spatialsign::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kNumeric = 3,
  kInternal = 4,
};

/// Environment variable giving the default worker count for `simulate`.
inline constexpr const char* kThreadsEnv = "SSCOR_THREADS";

/// Runs the sscor command line. args excludes the program name. Reports go to
/// out, diagnostics to err; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spatialsign::cli
