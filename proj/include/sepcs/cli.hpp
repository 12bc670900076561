#ifndef SEPCS_CLI_HPP
#define SEPCS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace sepcs {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitInputError = 2,
  kExitBudgetExceeded = 3,
};

/// Runs one command line (args[0] is the program name). --in/--out default
/// to `in`/`out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace sepcs

#endif  // SEPCS_CLI_HPP
