#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace slicemon::cli {

enum ExitCode : int { Ok = 0, Usage = 2, Parse = 3, Bound = 4 };

/// Runs the command line `args` (args[0] is the program name). Writes one
/// JSON object to `out` on success and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace slicemon::cli
