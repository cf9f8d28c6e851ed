#include "torricelli/errors.hpp"

namespace torricelli {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::AtAnchor: return "AtAnchor";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InactiveAnchor: return "InactiveAnchor";
    case ErrorCode::NoActiveAnchor: return "NoActiveAnchor";
    case ErrorCode::DegenerateFrame: return "DegenerateFrame";
    case ErrorCode::DeltaTooLarge: return "DeltaTooLarge";
    case ErrorCode::BeyondInjectivityRadius: return "BeyondInjectivityRadius";
    case ErrorCode::BaseMismatch: return "BaseMismatch";
    case ErrorCode::AntipodalPoints: return "AntipodalPoints";
    case ErrorCode::NotInHemisphere: return "NotInHemisphere";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

}  // namespace torricelli
