#pragma once

#include <ostream>

namespace labelforge::cli {

enum ExitCode : int {
    kOk = 0,
    kParseFailure = 1,
    kSemanticFailure = 2,
    kIoFailure = 3,
};

// Entry point of the labelforge command line. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace labelforge::cli
