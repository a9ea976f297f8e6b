#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cis::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNoConvergence = 3;
inline constexpr int kExitResource = 4;

/// Runs one command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace cis::cli
