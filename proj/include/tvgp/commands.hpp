#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tvgp::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kValidation = 2,
  kDegenerate = 3,
};

/// Runs the command line `tvgp <args...>` (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tvgp::cli
