#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qcalc {

enum class ErrorCode {
  TailNotConverged,
  ZeroDenominator,
  NegativeIndexUndefined,
  VarSetMismatch,
  NonUnitConstantTerm,
  UnknownVariable,
  OrderTooSmall,
  Divergent,
  ZeroPoint,
  IndexOutOfRange,
  IntegrandUndefined,
  PreconditionViolated,
  PdeNotSatisfied,
  UnknownIdentity,
  ConstraintViolated,
  EmptyDomain,
  InvalidContext,
  ParseError,
};

std::string_view error_name(ErrorCode code);

/// Single exception type for the library; `code()` tells callers which
/// contract was broken.
class QError : public std::runtime_error {
 public:
  QError(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qcalc
