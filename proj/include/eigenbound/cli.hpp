#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eigenbound::cli {

/// Stable process exit codes.
enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kInput = 2,
    kSingularLeading = 3,
    kViolation = 4,
};

/// Runs the command line `args` (args[0] is the program name) writing
/// regular output to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eigenbound::cli
