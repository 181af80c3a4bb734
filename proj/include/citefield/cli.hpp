#pragma once

namespace citefield {

// Command-line entry point shared by the binary and in-process tests.
// Returns 0 on success, 1 on usage errors, 2 on data errors.
int run_cli(int argc, const char* const* argv);

}  // namespace citefield
