#pragma once

#include <iosfwd>

namespace obmstop::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kVerificationFailed = 2,
    kNoConvergence = 3,
};

/// Entry point of the obmstop command line. Output goes to `out` unless a file
/// is selected with --output or OBMSTOP_OUTPUT_DIR.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace obmstop::cli
