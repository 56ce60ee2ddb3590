#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace opradius {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitNumerical = 70;

/// The opradius command line. `args` excludes the program name. Returns the
/// process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace opradius
