#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace interprime::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// args excludes the program name. Reports go to out (or --output), diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Version string written into every report header.
std::string version();

}  // namespace interprime::cli
