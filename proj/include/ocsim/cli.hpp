#pragma once

namespace ocsim {

// Entry point behind main(): parses arguments, dispatches run/sweep/validate.
// Returns the process exit code: 0 success, 1 configuration or usage error,
// 2 runtime failure.
int run_cli(int argc, const char* const* argv);

} // namespace ocsim
