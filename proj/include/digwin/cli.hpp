#pragma once

#include <string>
#include <vector>

namespace digwin {

// Runs one CLI invocation (argv without the program name).
// Exit codes: 0 success (possibly with notes), 2 usage or input error.
int run_cli(const std::vector<std::string>& args);

}  // namespace digwin
