#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cuphom::cli {

enum ExitStatus : int {
    kSuccess = 0,
    kVerificationFailure = 1,
    kInputError = 2,
};

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cuphom::cli
