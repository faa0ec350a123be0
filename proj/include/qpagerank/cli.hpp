#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace qpr::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kFileNotFound = 2,
  kParseError = 3,
  kInvalidParameters = 4,
};

/// Runs one `qrank` invocation. `args` excludes the program name.
/// Results go to `out` (or --output), diagnostics to `err` as single lines.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace qpr::cli
