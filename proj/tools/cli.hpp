#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace modgl2::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kValidation = 2;
inline constexpr int kOracle = 3;
inline constexpr int kBoundViolation = 4;
inline constexpr int kInternal = 1;

// args excludes the program name. Data goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace modgl2::cli
