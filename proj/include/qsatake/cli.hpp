#pragma once

// Command-line front end. dispatch parses the argument vector (program
// name excluded), runs one subcommand, and writes results to out and
// diagnostics to err. Exit codes: 0 when everything passed, 1 when some
// check failed, 2 on usage errors or unreadable input.

#include <iosfwd>
#include <string>
#include <vector>

namespace qsatake {

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace qsatake
