#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ipred {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitInvalid = 2;

/// `args` excludes the program name. Reports go to --out when given, otherwise to `out`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ipred
