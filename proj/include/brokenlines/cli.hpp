#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace brokenlines {

enum ExitCode : int { kExitOk = 0, kExitInvalid = 1, kExitCheckFailed = 2 };

/// Runs the command line; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace brokenlines
