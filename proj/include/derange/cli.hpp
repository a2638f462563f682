#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace derange::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kBadConfig = 2,
  /// Missing moments for `table`, missing sampler for `mc`.
  kUnavailable = 3,
  /// `mc` estimate outside 5 standard errors.
  kMonteCarloMismatch = 1,
};

/// Runs one invocation; `args` excludes the program name. Results go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace derange::cli
