#include "nilvf/error.hpp"

namespace nilvf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::ZeroGcd: return "ZeroGcd";
    case ErrorCode::Incompatible: return "Incompatible";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::NotNilpotent: return "NotNilpotent";
    case ErrorCode::NotNilpotentOperator: return "NotNilpotentOperator";
    case ErrorCode::RankTooHigh: return "RankTooHigh";
    case ErrorCode::NonRationalConstants: return "NonRationalConstants";
    case ErrorCode::ZeroAlgebra: return "ZeroAlgebra";
    case ErrorCode::Precondition: return "PreconditionViolation";
    case ErrorCode::Internal: return "InternalError";
  }
  return "Unknown";
}

}  // namespace nilvf
