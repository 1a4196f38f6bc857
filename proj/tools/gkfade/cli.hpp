#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gkfade::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kValidationFailed = 1,
  kUsage = 2,
  kNumeric = 3,
};

/// Runs `gkfade <args...>` (args exclude the program name), writing normal
/// output to `out` and diagnostics to `err`.  Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gkfade::cli
