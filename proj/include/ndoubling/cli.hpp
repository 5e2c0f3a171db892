#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ndoubling::cli {

enum ExitCode : int {
  kSuccess = 0,
  kDomainError = 1,
  kUsageError = 2,
};

// Runs one command. `args` excludes the program name. Data goes to `out`
// (or to --out FILE), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ndoubling::cli
