#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace bdsep::cli {

enum ExitCode : int {
  kSeparable = 0,
  kReproduced = 0,
  kEntangled = 1,
  kNotReproduced = 1,
  kUndecided = 2,
  kUsage = 64,      // EX_USAGE / bad input data
  kCantCreate = 66  // output path not writable
};

/// Parses "0.25", "1e-3" or a fraction "1/6". Throws std::invalid_argument.
double parse_real_or_fraction(std::string_view text);

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bdsep::cli
