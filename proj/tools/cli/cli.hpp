#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace testset::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,  // bench rows failed, exact budget exhausted
  kBadArgs = 2,
  kInfeasible = 3,
  kSizeCap = 4,
  kIo = 5,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace testset::cli
