#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace seev2x::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 2,
  kCollision = 3,
  kPartialSweep = 4,
};

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seev2x::cli
