#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace srlab::cli {

enum ExitCode : int {
    kSuccess = 0,
    kPredicateFalse = 1,
    kUsageError = 2,
    kInvariantBreach = 3,
};

/// Runs one command line (without the program name). Output is written to
/// `out` and `err` once, after the command has finished.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace srlab::cli
