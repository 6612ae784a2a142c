#pragma once
// Command-line front end. `run` is the whole program minus process setup, so
// tests can drive it with string streams.
#include <iosfwd>
#include <string>
#include <vector>

namespace tropdeg::cli {

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kInputError = 2,
    kDiagnosticFailure = 3,
    kNonConvergence = 4,
};

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tropdeg::cli
