#pragma once

#include <stdexcept>
#include <string>

namespace gq {

enum class ErrorCode {
  DivisionByZero,
  DimensionMismatch,
  FieldMismatch,
  NotAGroup,
  UnknownObject,
  TargetMismatch,
  NonComposable,
  NotNatural,
  MalformedSquare,
  NonInvertibleScalar,
  NonInvertibleDelta,
  NonInvertibleMatrix,
  NonComposableSpans,
  BadArgument,
  ParseError,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::NotAGroup: return "NotAGroup";
    case ErrorCode::UnknownObject: return "UnknownObject";
    case ErrorCode::TargetMismatch: return "TargetMismatch";
    case ErrorCode::NonComposable: return "NonComposable";
    case ErrorCode::NotNatural: return "NotNatural";
    case ErrorCode::MalformedSquare: return "MalformedSquare";
    case ErrorCode::NonInvertibleScalar: return "NonInvertibleScalar";
    case ErrorCode::NonInvertibleDelta: return "NonInvertibleDelta";
    case ErrorCode::NonInvertibleMatrix: return "NonInvertibleMatrix";
    case ErrorCode::NonComposableSpans: return "NonComposableSpans";
    case ErrorCode::BadArgument: return "BadArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace gq
