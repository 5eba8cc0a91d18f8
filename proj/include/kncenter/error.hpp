#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kn {

enum class ErrorCode {
  NotInvertible,
  NonIntegrablePole,
  IncompatibleLattice,
  TableTooSmall,
  WindowTooSmall,
  InvalidCurve,
  DuplicateRoot,
  ZeroRoot,
  InconsistentParams,
  AmbiguousC,
  ToleranceConflict,
  NotDihedralCaseA,
  NonConstantCharacter,
  NonIntegralMultiplicity,
  KDoesNotDivide,
  ParseError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NonIntegrablePole: return "NonIntegrablePole";
    case ErrorCode::IncompatibleLattice: return "IncompatibleLattice";
    case ErrorCode::TableTooSmall: return "TableTooSmall";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::InvalidCurve: return "InvalidCurve";
    case ErrorCode::DuplicateRoot: return "DuplicateRoot";
    case ErrorCode::ZeroRoot: return "ZeroRoot";
    case ErrorCode::InconsistentParams: return "InconsistentParams";
    case ErrorCode::AmbiguousC: return "AmbiguousC";
    case ErrorCode::ToleranceConflict: return "ToleranceConflict";
    case ErrorCode::NotDihedralCaseA: return "NotDihedralCaseA";
    case ErrorCode::NonConstantCharacter: return "NonConstantCharacter";
    case ErrorCode::NonIntegralMultiplicity: return "NonIntegralMultiplicity";
    case ErrorCode::KDoesNotDivide: return "KDoesNotDivide";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Domain error raised by every module; `code()` identifies the failure kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kn
