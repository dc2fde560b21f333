#pragma once

#include <iosfwd>

namespace hmfa::cli {

/// Exit codes: 0 success, 1 usage or configuration error, 2 runtime failure.
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_runtime = 2;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace hmfa::cli
