#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ave::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,       ///< reproduction mismatch or unexpected error
  kParse = 2,         ///< input file could not be loaded
  kSingular = 3,      ///< a Newton step matrix was singular
  kIterationCap = 4,  ///< iteration cap reached without a solution
  kOracleSize = 5,    ///< oracle refused n > 20
  kUsage = 6,         ///< bad flags or inconsistent dimensions
};

/// Runs the tool with `args` (program name excluded).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ave::cli
