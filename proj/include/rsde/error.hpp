#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rsde {

// Values are mirrored one-to-one by RsdeStatus in rsde.h.
enum class ErrorCode : int {
  Success = 0,
  NonMonotoneGrid = 1,
  LengthMismatch = 2,
  NonFiniteValue = 3,
  NegativeTime = 4,
  InvalidP = 5,
  InvalidParameter = 6,
  BarrierAboveStart = 7,
  DimensionMismatch = 8,
  DomainError = 9,
  InvalidExponents = 10,
  InvalidHurst = 11,
  EmbeddingFailure = 12,
  GridMismatch = 13,
  UnknownKind = 14,
  CoefficientEvaluationFailure = 15,
  InadmissibleStart = 16,
  PartitionOverflow = 17,
  NoConvergence = 18,
  ParseError = 19,
  IoError = 20,
  InvalidHandle = 21,
  Unknown = 22,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace rsde
