#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypmod {

enum class ErrorCode {
  NotPrime,
  EvenPrime,
  DenominatorNotDividing,
  BackendUnsupported,
  ContextMismatch,
  AmbiguousReconstruction,
  Inconsistent,
  LengthMismatch,
  MissingUnitLowerParameter,
  ZArgumentZero,
  PrimeNotSplit,
  NotPrimitive,
  ZeroDenominatorJacobi,
  TZero,
  OffGridFactor,
  NotInS4,
  NotInS5,
  PrecisionUnderflow,
  PoleInLowerParameter,
  NonUnitConstantTerm,
  NonInvertibleSeries,
  IdentityFails,
  BeyondPrecision,
  NonMonic,
  DivisionByZero,
  FieldMismatch,
  InsufficientPrecision,
  ResidualNonZero,
  NotAnEigenvector,
  CoefficientNotRational,
  NoRationalSolution,
  DenominatorDivisibleByP,
  NetworkDisabled,
  LabelNotFound,
  CoefficientMismatch,
  UnknownName,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// The single exception type thrown by the library. Callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hypmod
