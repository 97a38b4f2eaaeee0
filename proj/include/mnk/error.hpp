#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mnk {

enum class ErrorKind {
  NonSpacelike,
  AtInfinity,
  DegenerateSpan,
  AmbiguousOrientation,
  UnsupportedN,
  NumericalDegeneracy,
  OutOfRange,
  NotUltraparallel,
  SingularPairing,
  InvalidStep,
  DescentFailure,
  NonManifold,
  WrongCase,
  ClosureFailure,
  MissingGenerator,
  ParseError,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonSpacelike: return "NonSpacelike";
    case ErrorKind::AtInfinity: return "AtInfinity";
    case ErrorKind::DegenerateSpan: return "DegenerateSpan";
    case ErrorKind::AmbiguousOrientation: return "AmbiguousOrientation";
    case ErrorKind::UnsupportedN: return "UnsupportedN";
    case ErrorKind::NumericalDegeneracy: return "NumericalDegeneracy";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NotUltraparallel: return "NotUltraparallel";
    case ErrorKind::SingularPairing: return "SingularPairing";
    case ErrorKind::InvalidStep: return "InvalidStep";
    case ErrorKind::DescentFailure: return "DescentFailure";
    case ErrorKind::NonManifold: return "NonManifold";
    case ErrorKind::WrongCase: return "WrongCase";
    case ErrorKind::ClosureFailure: return "ClosureFailure";
    case ErrorKind::MissingGenerator: return "MissingGenerator";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Single exception type for the library; `kind()` tells callers what failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mnk
