#include "polycoho/error.hpp"

namespace polycoho {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::Dimension: return "dimension";
    case ErrorCode::DivisionByZero: return "division_by_zero";
    case ErrorCode::FieldMismatch: return "field_mismatch";
    case ErrorCode::Genericity: return "genericity";
    case ErrorCode::Singularity: return "singularity";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace polycoho
