#pragma once

#include <iosfwd>

namespace anomidx::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 1,
    kDataError = 2,
    kInternalError = 3,
};

/// Entry point shared by the anomidx executable and the tests. Standard
/// output receives JSON only; diagnostics go to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace anomidx::cli
