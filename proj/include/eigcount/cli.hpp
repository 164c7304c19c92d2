#pragma once

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

namespace eigcount::cli {

enum ExitCode : int {
  ok = 0,
  failure = 1,
  usage_error = 2,
  numerical_error = 3,
  failure_rate_abort = 4,
};

/// Exit code for an exception escaping a subcommand.
int exit_code_for(const std::exception& e);

/// Runs one subcommand. `args` excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eigcount::cli
