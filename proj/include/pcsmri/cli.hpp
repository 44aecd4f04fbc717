#pragma once

#include <string>
#include <vector>

namespace pcsmri::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kConfigError = 2;
inline constexpr int kIoError = 3;
inline constexpr int kDivergence = 4;
inline constexpr int kExternalPriorFailure = 5;

/// Entry point of the `pcsmri` tool; args excludes the program name.
int run(const std::vector<std::string> &args);

} // namespace pcsmri::cli
