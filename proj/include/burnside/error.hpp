#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace burnside {

enum class ErrorCode {
  ParseError,
  NotAssociative,
  NoIdentity,
  NoInverse,
  NotASubgroup,
  CapExceeded,
  NotContained,
  NotNormal,
  NotHomomorphism,
  GroupMismatch,
  TargetMismatch,
  NotEquivariant,
  NotCentralizing,
  NonIntegerCoefficients,
  NonFieldCoefficients,
  CoefficientMismatch,
  LevelOrder,
  BadDivisorChain,
  SpecUnresolvable,
  IncoherentMarkers,
  EvenPrime,
  InvalidArgument,
  InvariantViolation,
};

inline std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::NoIdentity: return "NoIdentity";
    case ErrorCode::NoInverse: return "NoInverse";
    case ErrorCode::NotASubgroup: return "NotASubgroup";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NotContained: return "NotContained";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::NotHomomorphism: return "NotHomomorphism";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::TargetMismatch: return "TargetMismatch";
    case ErrorCode::NotEquivariant: return "NotEquivariant";
    case ErrorCode::NotCentralizing: return "NotCentralizing";
    case ErrorCode::NonIntegerCoefficients: return "NonIntegerCoefficients";
    case ErrorCode::NonFieldCoefficients: return "NonFieldCoefficients";
    case ErrorCode::CoefficientMismatch: return "CoefficientMismatch";
    case ErrorCode::LevelOrder: return "LevelOrder";
    case ErrorCode::BadDivisorChain: return "BadDivisorChain";
    case ErrorCode::SpecUnresolvable: return "SpecUnresolvable";
    case ErrorCode::IncoherentMarkers: return "IncoherentMarkers";
    case ErrorCode::EvenPrime: return "EvenPrime";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// message names the offending witness where there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace burnside
