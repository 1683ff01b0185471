#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace latspec {

enum ExitCode : int {
    kExitOk = 0,
    kExitComparisonFailed = 1,
    kExitInputError = 2,
    kExitNumericalFailure = 3,
};

/// Entry point of the `latspec` tool. args excludes the program name.
/// Subcommands: validate, fiber, spectrum, sweep, oracle.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latspec
