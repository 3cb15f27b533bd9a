#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace trajcx {

enum class ErrorCode {
  kDegenerateSegment,
  kNonPositiveSpeed,
  kNonPositiveSigma,
  kNonFiniteValue,
  kTimeOutOfRange,
  kEmptyWindow,
  kSingularCovariance,
  kDuplicateId,
  kFewerThanTwoAircraft,
  kSyntaxError,
  kValidationError,
  kIndexOutOfRange,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this one exception type; the
// code lets callers branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace trajcx
