#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fairwage::cli {

enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,
  kUsage = 2,
  kInvalidInput = 3,
  kNoConvergence = 4,
};

/// Runs the command line `args` (without the program name). `in` backs the
/// "-" path argument.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace fairwage::cli
