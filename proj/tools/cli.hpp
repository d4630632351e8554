#pragma once

#include <iosfwd>

namespace disclab::cli {

/// Exit codes of the `disclab` tool.
inline constexpr int exit_ok = 0;
inline constexpr int exit_domain_error = 1;
inline constexpr int exit_usage_error = 2;
inline constexpr int exit_verdict_failed = 3;

/// Entry point behind `main`; results go to `out` (or --out), diagnostics
/// to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace disclab::cli
