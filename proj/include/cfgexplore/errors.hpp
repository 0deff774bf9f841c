#pragma once

#include <stdexcept>
#include <string>

namespace cfgx {

// Machine-readable failure codes surfaced through Error::code() and mapped
// onto CLI exit statuses (input errors -> 2, numerical failures -> 3).
enum class ErrorCode {
  EmptyInput,
  OddDegreeSum,
  ZeroDegree,
  TooLarge,
  Terminated,
  InvalidControl,
  ZeroIntensityJump,
  NegativeInput,
  NoConvergence,
  NoSignChange,
  AllZero,
  InvalidTarget,
  ControlPathMismatch,
  StepTooLarge,
  BadFile,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::OddDegreeSum: return "OddDegreeSum";
    case ErrorCode::ZeroDegree: return "ZeroDegree";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Terminated: return "Terminated";
    case ErrorCode::InvalidControl: return "InvalidControl";
    case ErrorCode::ZeroIntensityJump: return "ZeroIntensityJump";
    case ErrorCode::NegativeInput: return "NegativeInput";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::AllZero: return "AllZero";
    case ErrorCode::InvalidTarget: return "InvalidTarget";
    case ErrorCode::ControlPathMismatch: return "ControlPathMismatch";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::BadFile: return "BadFile";
  }
  return "UnknownError";
}

inline bool is_numerical(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoConvergence:
    case ErrorCode::NoSignChange:
    case ErrorCode::StepTooLarge:
    case ErrorCode::ZeroIntensityJump:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace cfgx
