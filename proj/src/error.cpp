#include "dicmine/error.hpp"

namespace dicmine {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ItemOutOfRange: return "ITEM_OUT_OF_RANGE";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::EmptyDatabase: return "EMPTY_DATABASE";
    case ErrorCode::FormatError: return "FORMAT_ERROR";
    case ErrorCode::IoError: return "IO_ERROR";
    case ErrorCode::SpecError: return "SPEC_ERROR";
    case ErrorCode::UniverseTooLarge: return "UNIVERSE_TOO_LARGE";
    case ErrorCode::InvalidParams: return "INVALID_PARAMS";
    case ErrorCode::CorrectnessFailure: return "CORRECTNESS_FAILURE";
  }
  return "UNKNOWN";
}

}  // namespace dicmine
