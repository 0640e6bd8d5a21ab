#include "qcalc/error.hpp"

namespace qcalc {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::TailNotConverged: return "TailNotConverged";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::NegativeIndexUndefined: return "NegativeIndexUndefined";
    case ErrorCode::VarSetMismatch: return "VarSetMismatch";
    case ErrorCode::NonUnitConstantTerm: return "NonUnitConstantTerm";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::OrderTooSmall: return "OrderTooSmall";
    case ErrorCode::Divergent: return "Divergent";
    case ErrorCode::ZeroPoint: return "ZeroPoint";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::IntegrandUndefined: return "IntegrandUndefined";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::PdeNotSatisfied: return "PdeNotSatisfied";
    case ErrorCode::UnknownIdentity: return "UnknownIdentity";
    case ErrorCode::ConstraintViolated: return "ConstraintViolated";
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::InvalidContext: return "InvalidContext";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

QError::QError(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

}  // namespace qcalc
