#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcluster::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,       // numerical failure
  kInputError = 2,    // unreadable or invalid input, bad flags
  kPrecondition = 3,  // disconnected graph where one component is required
  kDesignInfeasible = 4,
};

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcluster::cli
