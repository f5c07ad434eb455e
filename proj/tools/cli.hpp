#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sphrkhs::cli {

// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomainOrInput = 1;
inline constexpr int kInvalidParameters = 2;
inline constexpr int kInadmissible = 3;
inline constexpr int kIndeterminate = 4;
inline constexpr int kSingular = 5;

/// Runs one command line (args[0] is the program name). Regular output goes to
/// `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sphrkhs::cli
