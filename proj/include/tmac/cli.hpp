#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace tmac::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitUsage = 3;

/// Runs one command. `args` excludes the program name, e.g.
/// {"assess", "reference/smart-home.tma", "--format", "csv"}.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace tmac::cli
