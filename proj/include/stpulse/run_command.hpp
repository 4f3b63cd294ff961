#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stpulse {

// Dispatches one CLI invocation (args exclude the program name) and returns
// the process exit code: 0 success, 2 config/usage error, 3 infeasible
// design, 4 numerical-tolerance failure, 1 unexpected error.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace stpulse
