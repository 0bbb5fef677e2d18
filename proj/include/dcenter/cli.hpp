#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dcenter::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInvalidInput = 1,
  kConsistencyFailure = 2,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`. Output is deterministic for identical arguments.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dcenter::cli
