#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zeno::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInternalError = 1,
  kValidationError = 2,
  kCapacityError = 3,
};

// Environment variable holding the sweep worker count; unset means one thread.
inline constexpr const char* kThreadsEnv = "ZENOLAB_THREADS";

// Runs one zenolab invocation. `args` excludes the program name. Reports go to
// `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zeno::cli
