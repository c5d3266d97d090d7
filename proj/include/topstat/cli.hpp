#pragma once

#include <string>
#include <vector>

namespace topstat {

/// Entry point behind the command-line binary, separated from main() so
/// tests can drive it in-process. args holds the arguments without the
/// program name. Returns the process exit code: 0 on success, 1 on a
/// usage or validation error, 2 on a numerical failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace topstat
