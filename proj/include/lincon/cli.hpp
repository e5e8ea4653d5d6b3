#pragma once

#include <ostream>

namespace lincon::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumeric = 2;
inline constexpr int kExitInput = 3;

// Parses argv, runs one subcommand, writes data to out and diagnostics to
// err. Returns 0 on success, 2 when a numeric method fails (or a reproduction
// case does not pass), 3 on bad input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lincon::cli
