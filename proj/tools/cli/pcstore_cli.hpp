#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pcstore::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIo = 3;

/// Runs the pcstore command line. args excludes the program name. CSV/JSON
/// written with "--out -" (the default) goes to out; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pcstore::cli
