#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gmc {

enum class ErrorCode {
  BadInput,
  AllZero,
  NotInCone,
  NotSupporting,
  NotFullDimensional,
  NotBig,
  EmptyFace,
  InsufficientData,
  UnknownMap,
  NonIntegralExponent,
  DegenerateParams,
  UnknownEntry,
  NotInFace,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::AllZero: return "AllZero";
    case ErrorCode::NotInCone: return "NotInCone";
    case ErrorCode::NotSupporting: return "NotSupporting";
    case ErrorCode::NotFullDimensional: return "NotFullDimensional";
    case ErrorCode::NotBig: return "NotBig";
    case ErrorCode::EmptyFace: return "EmptyFace";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::UnknownMap: return "UnknownMap";
    case ErrorCode::NonIntegralExponent: return "NonIntegralExponent";
    case ErrorCode::DegenerateParams: return "DegenerateParams";
    case ErrorCode::UnknownEntry: return "UnknownEntry";
    case ErrorCode::NotInFace: return "NotInFace";
  }
  return "Unknown";
}

/// Every failure in the library is reported as a gmc::Error carrying a code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Malformed input as opposed to a mathematical precondition failure.
  bool is_input_error() const noexcept {
    return code_ == ErrorCode::BadInput || code_ == ErrorCode::UnknownMap ||
           code_ == ErrorCode::UnknownEntry || code_ == ErrorCode::InsufficientData;
  }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace gmc
