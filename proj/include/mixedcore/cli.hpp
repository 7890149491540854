#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mixedcore::cli {

/// Exit codes shared by every command.
enum ExitCode : int {
    Success = 0,
    ValidationFailure = 1,
    HypothesisFailure = 2,
    UsageOrIo = 3,
    CertificationOrProperty = 4,
};

/// Runs one command. `args` excludes the program name. The RunReport JSON goes
/// to `out`, human diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mixedcore::cli
