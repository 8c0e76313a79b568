// Error taxonomy for the workbench.  Every failure surfaced by the library API
// throws wb::Error carrying one of these codes; the CLI maps configuration
// problems to exit code 2 and everything else to a failed run.
#pragma once

#include <stdexcept>
#include <string>

namespace wb {

enum class ErrorCode {
  NonHermitianInput,
  SingularForLog,
  SingularOperator,
  DimensionMismatch,
  DegenerateBasis,
  NotStandard,
  DimensionCapExceeded,
  NotCyclic,
  NotSeparating,
  ModeCapExceeded,
  WrongParity,
  OverlappingRegions,
  NotFaithful,
  BadAxis,
  BadPlane,
  BadDimension,
  MalformedWord,
  MalformedRegion,
  NonOrthogonalWedges,
  UnsupportedSpin,
  ConfigError,
  IoError,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonHermitianInput:   return "NonHermitianInput";
    case ErrorCode::SingularForLog:      return "SingularForLog";
    case ErrorCode::SingularOperator:    return "SingularOperator";
    case ErrorCode::DimensionMismatch:   return "DimensionMismatch";
    case ErrorCode::DegenerateBasis:     return "DegenerateBasis";
    case ErrorCode::NotStandard:         return "NotStandard";
    case ErrorCode::DimensionCapExceeded:return "DimensionCapExceeded";
    case ErrorCode::NotCyclic:           return "NotCyclic";
    case ErrorCode::NotSeparating:       return "NotSeparating";
    case ErrorCode::ModeCapExceeded:     return "ModeCapExceeded";
    case ErrorCode::WrongParity:         return "WrongParity";
    case ErrorCode::OverlappingRegions:  return "OverlappingRegions";
    case ErrorCode::NotFaithful:         return "NotFaithful";
    case ErrorCode::BadAxis:             return "BadAxis";
    case ErrorCode::BadPlane:            return "BadPlane";
    case ErrorCode::BadDimension:        return "BadDimension";
    case ErrorCode::MalformedWord:       return "MalformedWord";
    case ErrorCode::MalformedRegion:     return "MalformedRegion";
    case ErrorCode::NonOrthogonalWedges: return "NonOrthogonalWedges";
    case ErrorCode::UnsupportedSpin:     return "UnsupportedSpin";
    case ErrorCode::ConfigError:         return "ConfigError";
    case ErrorCode::IoError:             return "IoError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) raise(code, what);
}

}  // namespace wb
