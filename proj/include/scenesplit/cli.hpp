#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scenesplit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitProcessing = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (args[0] is the program name). stdin is only
/// read for --raw input without --input. Returns the process exit code.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace scenesplit::cli
