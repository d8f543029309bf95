#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bfly::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kParseError = 2,
  kOverflow = 3,
  kUsage = 4,
  kInternal = 5,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bfly::cli
