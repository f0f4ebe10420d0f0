#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace skelpot::cli {

// Runs the command line; `args` is argv including the program name. Output
// goes to `out`, diagnostics to `err`.
// Exit codes: 0 success or positive verdict, 1 negative verdict, 2 bad input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace skelpot::cli
