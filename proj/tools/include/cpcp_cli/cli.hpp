#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cpcp::cli {

enum ExitCode { kExitOk = 0, kExitGap = 1, kExitUsage = 2 };

// Runs the command line `args` (args[0] is the program name) and returns the
// process exit code. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace cpcp::cli
