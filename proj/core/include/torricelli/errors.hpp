#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace torricelli {

enum class ErrorCode {
  InvalidArgument,
  CoincidentPoints,
  AtAnchor,
  IndexOutOfRange,
  InactiveAnchor,
  NoActiveAnchor,
  DegenerateFrame,
  DeltaTooLarge,
  BeyondInjectivityRadius,
  BaseMismatch,
  AntipodalPoints,
  NotInHemisphere,
  BudgetExceeded,
};

const char* to_string(ErrorCode code);

// Library-wide exception. `index` identifies the offending anchor for the
// anchor-related codes and is -1 otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::ptrdiff_t index = -1)
      : std::runtime_error(message), code_(code), index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  std::ptrdiff_t index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::ptrdiff_t index_;
};

}  // namespace torricelli
