#include "nhg/error.hpp"

namespace nhg {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kUnknownVariable: return "unknown_variable";
    case ErrorCode::kDivisionByZero: return "division_by_zero";
    case ErrorCode::kPole: return "pole";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kContextMismatch: return "context_mismatch";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kIndeterminate: return "indeterminate";
    case ErrorCode::kSingularJacobian: return "singular_jacobian";
    case ErrorCode::kSolutionCheck: return "solution_check";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kProximity: return "proximity";
    case ErrorCode::kStepUnderflow: return "step_underflow";
    case ErrorCode::kNonFinite: return "non_finite";
    case ErrorCode::kBlowUp: return "blow_up";
    case ErrorCode::kSchema: return "schema";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kMissingSection: return "missing_section";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

}  // namespace nhg
