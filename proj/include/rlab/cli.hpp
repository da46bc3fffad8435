#pragma once

namespace rlab {

// Full command-line entry point; returns the process exit code
// (0 ok, 1 usage, 2 data, 3 resource limits).
int run_cli(int argc, const char* const* argv);

}  // namespace rlab
