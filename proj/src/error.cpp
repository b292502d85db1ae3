#include "hypmod/error.hpp"

namespace hypmod {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::EvenPrime: return "EvenPrime";
    case ErrorCode::DenominatorNotDividing: return "DenominatorNotDividing";
    case ErrorCode::BackendUnsupported: return "BackendUnsupported";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::AmbiguousReconstruction: return "AmbiguousReconstruction";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::MissingUnitLowerParameter: return "MissingUnitLowerParameter";
    case ErrorCode::ZArgumentZero: return "ZArgumentZero";
    case ErrorCode::PrimeNotSplit: return "PrimeNotSplit";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::ZeroDenominatorJacobi: return "ZeroDenominatorJacobi";
    case ErrorCode::TZero: return "TZero";
    case ErrorCode::OffGridFactor: return "OffGridFactor";
    case ErrorCode::NotInS4: return "NotInS4";
    case ErrorCode::NotInS5: return "NotInS5";
    case ErrorCode::PrecisionUnderflow: return "PrecisionUnderflow";
    case ErrorCode::PoleInLowerParameter: return "PoleInLowerParameter";
    case ErrorCode::NonUnitConstantTerm: return "NonUnitConstantTerm";
    case ErrorCode::NonInvertibleSeries: return "NonInvertibleSeries";
    case ErrorCode::IdentityFails: return "IdentityFails";
    case ErrorCode::BeyondPrecision: return "BeyondPrecision";
    case ErrorCode::NonMonic: return "NonMonic";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::ResidualNonZero: return "ResidualNonZero";
    case ErrorCode::NotAnEigenvector: return "NotAnEigenvector";
    case ErrorCode::CoefficientNotRational: return "CoefficientNotRational";
    case ErrorCode::NoRationalSolution: return "NoRationalSolution";
    case ErrorCode::DenominatorDivisibleByP: return "DenominatorDivisibleByP";
    case ErrorCode::NetworkDisabled: return "NetworkDisabled";
    case ErrorCode::LabelNotFound: return "LabelNotFound";
    case ErrorCode::CoefficientMismatch: return "CoefficientMismatch";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace hypmod
