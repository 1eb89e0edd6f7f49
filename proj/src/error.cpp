#include "conegrad/error.hpp"

namespace conegrad {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyGeneratorList: return "EmptyGeneratorList";
    case ErrorCode::ZeroGenerator: return "ZeroGenerator";
    case ErrorCode::NotFullDimensionalDual: return "NotFullDimensionalDual";
    case ErrorCode::DualNotPointed: return "DualNotPointed";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidSet: return "InvalidSet";
    case ErrorCode::InfeasibleBasePoint: return "InfeasibleBasePoint";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorCode::ArityError: return "ArityError";
    case ErrorCode::EvalDomainError: return "EvalDomainError";
    case ErrorCode::NonFiniteResult: return "NonFiniteResult";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::InfeasibleDirection: return "InfeasibleDirection";
    case ErrorCode::InvalidWeights: return "InvalidWeights";
    case ErrorCode::ScaleTooLarge: return "ScaleTooLarge";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::BacktrackExhausted: return "BacktrackExhausted";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InfeasibleStart: return "InfeasibleStart";
    case ErrorCode::NotInT: return "NotInT";
    case ErrorCode::UnsupportedSampling: return "UnsupportedSampling";
    case ErrorCode::ProblemFormat: return "ProblemFormat";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::optional<std::size_t> index)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      index_(index) {}

}  // namespace conegrad
