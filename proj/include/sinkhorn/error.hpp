#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sinkhorn {

enum class ErrorCode {
  Parse,
  DimensionMismatch,
  NotSquare,
  NotSymmetric,
  NonPositive,
  ZeroPolynomial,
  NonIsolating,
  FieldMismatch,
  DegenerateK,
  NoPositiveTriple,
  AmbiguousTriple,
  Unsupported,
  NotTwoValued,
  NoClass,
  NotDoublyStochastic,
  DivisionByZero,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NonPositive: return "NonPositive";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::NonIsolating: return "NonIsolating";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DegenerateK: return "DegenerateK";
    case ErrorCode::NoPositiveTriple: return "NoPositiveTriple";
    case ErrorCode::AmbiguousTriple: return "AmbiguousTriple";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::NotTwoValued: return "NotTwoValued";
    case ErrorCode::NoClass: return "NoClass";
    case ErrorCode::NotDoublyStochastic: return "NotDoublyStochastic";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sinkhorn
