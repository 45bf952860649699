#pragma once

namespace swiptsim {

// Full command-line entry point.  Returns the process exit status:
// 0 success, 2 usage error, 3 I/O failure, 4 computational failure.
int run_cli(int argc, const char* const* argv);

}  // namespace swiptsim
