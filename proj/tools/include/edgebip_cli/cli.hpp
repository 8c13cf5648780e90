#pragma once

#include <iosfwd>

namespace edgebip::cli {

inline constexpr int kExitFeasible = 0;
inline constexpr int kExitInfeasible = 1;
inline constexpr int kExitError = 2;

// Commands: solve, termsep, generate, bench, verify. Returns the exit status.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace edgebip::cli
