#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ucred::cli {

enum ExitCode { kPass = 0, kIdentityFailure = 1, kConfigError = 2, kComputationError = 3, kSingularAbort = 4 };

// Runs "ucred <subcommand> [flags]"; argv[0] is the program name. Diagnostics
// go to err, one summary line per command to out.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace ucred::cli
