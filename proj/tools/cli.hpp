#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace heun::cli {

/// Runs one command line (args[0] is the program name). Results go to `out`;
/// failures go to `err` as a one-line JSON object {"error": kind, "message": text}.
/// Returns the process exit status: 0 ok, 1 failed verification, 2 parse
/// error, 3 numerical non-convergence, 4 invalid parameters.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace heun::cli
