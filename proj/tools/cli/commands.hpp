#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qfridge::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitConvergence = 2,
  kExitValidation = 3,
};

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qfridge::cli
