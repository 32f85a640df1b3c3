#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pairwire::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitNonConvergence = 3,
  kExitIo = 4,
};

/// Environment variable naming the result cache directory.
inline constexpr const char* kCacheEnv = "PAIRWIRE_CACHE_DIR";

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Structured output goes to `out` (or the --output file),
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pairwire::cli
