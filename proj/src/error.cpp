#include "trajcx/error.hpp"

namespace trajcx {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDegenerateSegment: return "DegenerateSegment";
    case ErrorCode::kNonPositiveSpeed: return "NonPositiveSpeed";
    case ErrorCode::kNonPositiveSigma: return "NonPositiveSigma";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kTimeOutOfRange: return "TimeOutOfRange";
    case ErrorCode::kEmptyWindow: return "EmptyWindow";
    case ErrorCode::kSingularCovariance: return "SingularCovariance";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kFewerThanTwoAircraft: return "FewerThanTwoAircraft";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
  }
  return "Unknown";
}

}  // namespace trajcx
