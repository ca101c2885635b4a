#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hetbandit {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitUsage = 2,
  kExitResourceCap = 3,
};

/// Entry point behind the `hetbandit` executable. args excludes the program
/// name. Subcommands: run, verify, list.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hetbandit
