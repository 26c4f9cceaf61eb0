#pragma once

#include <string>
#include <vector>

namespace bellman2d {

/// Exit codes: 0 pass, 1 inconclusive (non-convergence, stalls, degenerate
/// warnings), 2 hard failure, 64 usage error.
int run_cli(const std::vector<std::string>& args);

} // namespace bellman2d
