#ifndef STRATA_TOOLS_CLI_HPP
#define STRATA_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace strata::cli {

/// Process exit codes.
enum ExitCode : int {
    ok = 0,
    bad_options = 1,
    io_failure = 2,
    reconstruction_failure = 3,
    fit_not_converged = 4,
};

/// Runs the command line `args` (args[0] is the program name). Normal output
/// goes to `out`; failures print one line "error: <stage>: <message>" to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace strata::cli

#endif
