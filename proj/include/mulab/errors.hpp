#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mulab {

// Domain error carrying a stable machine-readable code alongside the message.
// Codes are what the CLI emits in its error JSON; they never change once shipped.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace mulab
