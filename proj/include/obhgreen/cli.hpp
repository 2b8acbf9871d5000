// Command-line front end: rates, negativity, greens, convergence.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace obh::cli {

// Runs one command; returns the process exit code:
//   0 success, 2 configuration error, 3 numerical non-convergence.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace obh::cli
