#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace skyroute {

// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitInputError = 1, kExitNoPath = 2 };

// Runs one CLI invocation (args excludes the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace skyroute
