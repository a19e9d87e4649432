#pragma once

// In-process entry point of the ybt command line. Exit codes: 0 pass,
// 1 residual above tolerance, 2 usage or parameter error.

#include <ostream>
#include <string>
#include <vector>

namespace ybt::cli {

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ybt::cli
