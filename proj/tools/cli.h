#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qdcav::cli {

/// Runs one command line (without the program name). Human-readable results go
/// to `out`, diagnostics to `err`. Returns the process exit status: 0 on
/// success, nonzero on a parse, validation or numeric error.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qdcav::cli
