#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qtc::cli {

/// Exit codes of run_command.
enum ExitCode : int { kSuccess = 0, kDomainError = 1, kUsageError = 2 };

/// Runs one qtc subcommand. `args` excludes the program name. JSON goes to
/// `out`; usage messages go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qtc::cli
