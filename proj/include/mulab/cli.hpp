#pragma once

#include <string>
#include <vector>

namespace mulab::cli {

inline constexpr const char* kVersion = "0.1.0";

// Entry point behind the mulab binary; args excludes the program name.
// Exit codes: 0 success, 1 domain error (error JSON on stderr), 2 usage error.
int run(const std::vector<std::string>& args);

}  // namespace mulab::cli
