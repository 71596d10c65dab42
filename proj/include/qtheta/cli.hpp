#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qtheta {

// Runs the command-line interface on the given arguments (argv[0] excluded).
// Results (JSON or CSV) go to `out`, diagnostics to `err`.  Returns the
// process exit code: 0 success, 1 verification failures, 2 usage or
// configuration errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qtheta
