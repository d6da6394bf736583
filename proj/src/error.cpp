#include "totrep/error.hpp"

namespace totrep {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::FactorBoundExceeded: return "FactorBoundExceeded";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NotASquare: return "NotASquare";
    case ErrorCode::ParityViolation: return "ParityViolation";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::GcdViolation: return "GcdViolation";
    case ErrorCode::SieveBudgetExceeded: return "SieveBudgetExceeded";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::PeriodBudgetExceeded: return "PeriodBudgetExceeded";
    case ErrorCode::ModulusTooLarge: return "ModulusTooLarge";
    case ErrorCode::InvariantBroken: return "InvariantBroken";
    case ErrorCode::UnsupportedQuadruple: return "UnsupportedQuadruple";
    case ErrorCode::ConstructionFailed: return "ConstructionFailed";
    case ErrorCode::NoSuchK: return "NoSuchK";
  }
  return "Unknown";
}

}  // namespace totrep
