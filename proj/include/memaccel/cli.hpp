#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace memaccel::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;   // bad command line or unreadable input
inline constexpr int kExitDomain = 3;  // valid input the library rejects

/// Runs one subcommand (tune, guarantee, search, simulate, certify, spectrum).
/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace memaccel::cli
