#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cac {

namespace exit_code {
inline constexpr int kFound = 0;
inline constexpr int kMismatch = 1;
inline constexpr int kInputError = 2;
inline constexpr int kNoEquilibrium = 3;
inline constexpr int kSizeRefusal = 4;
}  // namespace exit_code

// Runs the command line front end. `args` excludes the program name.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace cac
