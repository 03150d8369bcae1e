#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pcforge::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kTrue = 0, kFalse = 1, kUsage = 2, kLimit = 3 };

/// Runs one invocation. `args` excludes the program name. The JSON report goes
/// to `out`, human-readable text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pcforge::cli
