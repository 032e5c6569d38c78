#pragma once

namespace becthermo {

// Full command-line front end. Exit codes: 0 success, 2 usage/config error,
// 3 numerical non-convergence.
int run_cli(int argc, const char* const* argv);

}  // namespace becthermo
