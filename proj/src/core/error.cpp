#include "rsde/error.hpp"

namespace rsde {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Success: return "Success";
    case ErrorCode::NonMonotoneGrid: return "NonMonotoneGrid";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::NegativeTime: return "NegativeTime";
    case ErrorCode::InvalidP: return "InvalidP";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::BarrierAboveStart: return "BarrierAboveStart";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InvalidExponents: return "InvalidExponents";
    case ErrorCode::InvalidHurst: return "InvalidHurst";
    case ErrorCode::EmbeddingFailure: return "EmbeddingFailure";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::UnknownKind: return "UnknownKind";
    case ErrorCode::CoefficientEvaluationFailure: return "CoefficientEvaluationFailure";
    case ErrorCode::InadmissibleStart: return "InadmissibleStart";
    case ErrorCode::PartitionOverflow: return "PartitionOverflow";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidHandle: return "InvalidHandle";
    case ErrorCode::Unknown: return "Unknown";
  }
  return "Unknown";
}

}  // namespace rsde
