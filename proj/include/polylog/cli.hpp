#pragma once

#include <iosfwd>

namespace polylog {

// records go to out, human-readable diagnostics to err; returns 0, 1 or 2
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace polylog
