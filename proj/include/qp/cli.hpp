#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qp {

// Runs one CLI request (arguments without the program name) and writes the
// rendered report to `out` and diagnostics to `err`.  Returns the process
// exit status: 0 success, 1 domain/internal error, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qp
