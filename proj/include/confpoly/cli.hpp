#pragma once

namespace confpoly {

// Full command-line front end. Returns the process exit code: 0 on
// success, 1 on runtime failure, 2 on argument errors.
int run_cli(int argc, const char* const* argv);

}  // namespace confpoly
