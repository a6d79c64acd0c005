#pragma once

#include <ostream>

namespace cqsl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitRuntime = 2;

/// Full command-line entry point; `out` receives results when no --out path
/// is given and `err` receives diagnostics and summaries.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cqsl::cli
