#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace auxsym {

enum class ErrorCode {
  // orbifold symbols
  UnknownCharacter,
  DigitOutOfRestriction,
  NotAWallpaperGroup,
  // patterns
  DegenerateLattice,
  IncompatibleLinearPart,
  InvalidPattern,
  // unit cells
  SingularElement,
  SingularSystem,
  NonInvertibleC,
  InvalidCell,
  InvalidStrain,
  // datasets / files
  ParseError,
  UnknownGroup,
  IoError,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownCharacter: return "UnknownCharacter";
    case ErrorCode::DigitOutOfRestriction: return "DigitOutOfRestriction";
    case ErrorCode::NotAWallpaperGroup: return "NotAWallpaperGroup";
    case ErrorCode::DegenerateLattice: return "DegenerateLattice";
    case ErrorCode::IncompatibleLinearPart: return "IncompatibleLinearPart";
    case ErrorCode::InvalidPattern: return "InvalidPattern";
    case ErrorCode::SingularElement: return "SingularElement";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NonInvertibleC: return "NonInvertibleC";
    case ErrorCode::InvalidCell: return "InvalidCell";
    case ErrorCode::InvalidStrain: return "InvalidStrain";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownGroup: return "UnknownGroup";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

/// Library-wide exception. The code identifies the failure class so callers
/// (and the CLI) can react without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace auxsym
