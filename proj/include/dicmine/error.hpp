#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dicmine {

enum class ErrorCode {
  ItemOutOfRange,
  ParseError,
  EmptyDatabase,
  FormatError,
  IoError,
  SpecError,
  UniverseTooLarge,
  InvalidParams,
  CorrectnessFailure,
};

// Stable, greppable identifier for an error code, e.g. "ITEM_OUT_OF_RANGE".
std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dicmine
