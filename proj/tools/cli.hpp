#pragma once

#include <iosfwd>

namespace curveflow::cli {

enum ExitCode : int {
    kOk = 0,
    kNegativeVerdict = 1,
    kInputError = 2,
    kIoError = 3,
};

/// Runs one command line (argv[0] is the program name). Output that the
/// command produces goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace curveflow::cli
