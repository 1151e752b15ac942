#pragma once

#include <ostream>

namespace swarmbo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Entry point behind the `swarmbo` executable:
///
///   swarmbo run     --config FILE [--output-dir DIR] [--seed N] [--jobs N]
///   swarmbo compare --config FILE [--output-dir DIR] [--seed N] [--jobs N]
///   swarmbo sweep   --config FILE [--output-dir DIR] [--seed N] [--jobs N]
///
/// Returns 0 on success, 1 on runtime failure, 2 on usage or config errors.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace swarmbo::cli
