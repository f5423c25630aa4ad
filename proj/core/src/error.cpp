#include "orbitope/error.hpp"

namespace orbitope {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedJson: return "MALFORMED_JSON";
    case ErrorCode::UnknownField: return "UNKNOWN_FIELD";
    case ErrorCode::MissingField: return "MISSING_FIELD";
    case ErrorCode::UnknownFamily: return "UNKNOWN_FAMILY";
    case ErrorCode::InvalidSize: return "INVALID_SIZE";
    case ErrorCode::DegenerateFamily: return "DEGENERATE_FAMILY";
    case ErrorCode::LengthMismatch: return "LENGTH_MISMATCH";
    case ErrorCode::SuSumNonzero: return "SU_SUM_NONZERO";
    case ErrorCode::InvalidValue: return "INVALID_VALUE";
    case ErrorCode::NotInGroup: return "NOT_IN_GROUP";
    case ErrorCode::NotInAlgebra: return "NOT_IN_ALGEBRA";
    case ErrorCode::CapExceeded: return "CAP_EXCEEDED";
    case ErrorCode::PatternMismatch: return "PATTERN_MISMATCH";
    case ErrorCode::IntegrationOnly: return "INTEGRATION_ONLY";
    case ErrorCode::Infeasible: return "INFEASIBLE";
    case ErrorCode::NumericOverflow: return "NUMERIC_OVERFLOW";
    case ErrorCode::Internal: return "INTERNAL";
  }
  return "INTERNAL";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedJson:
    case ErrorCode::UnknownField:
    case ErrorCode::MissingField:
    case ErrorCode::UnknownFamily:
    case ErrorCode::InvalidSize:
    case ErrorCode::DegenerateFamily:
    case ErrorCode::LengthMismatch:
    case ErrorCode::SuSumNonzero:
    case ErrorCode::InvalidValue:
    case ErrorCode::PatternMismatch:
    case ErrorCode::CapExceeded:
      return 2;
    case ErrorCode::Infeasible:
    case ErrorCode::IntegrationOnly:
      return 3;
    case ErrorCode::NumericOverflow:
      return 4;
    case ErrorCode::NotInGroup:
    case ErrorCode::NotInAlgebra:
    case ErrorCode::Internal:
      return 5;
  }
  return 5;
}

}  // namespace orbitope
