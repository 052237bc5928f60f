#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace freeset::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kNonOptimal = 2,
  kCapExceeded = 3,
  kIoError = 4,
};

/// Runs one command line (without the program name). JSON, JSONL or CSV goes
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace freeset::cli
