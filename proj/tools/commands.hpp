#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace engage::cli {

// Runs one CLI invocation. argv[0] is the program name. Returns the
// process exit code; diagnostics go to `err`, results to `out`, and
// corpus input named "-" is read from `in`.
int run(const std::vector<std::string>& argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace engage::cli
