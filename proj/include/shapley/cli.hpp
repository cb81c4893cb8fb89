#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shapley::cli {

enum ExitCode : int {
  kOk = 0,  // includes conditional pass
  kUsage = 1,
  kCheckFailure = 2,
  kPremiseError = 3,
  kCapacityError = 4,
  kParseError = 5,
};

/// Entry point shared by the `shapley` binary and the tests. `args` excludes
/// the program name. Reports go to `out` (or --output), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shapley::cli
