#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nchh::cli {

/// Stable process exit codes.
enum ExitCode : int {
    kOk = 0,
    kViolated = 1,  ///< bound violated, class check failed or identity failed
    kParse = 2,     ///< bad flags, specification syntax or unsupported combination
    kParity = 3,
    kEvaluation = 4,
};

/// Runs one subcommand. `args` excludes the program name. Report output goes to
/// `out` (or to --out), diagnostics and warnings to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nchh::cli
