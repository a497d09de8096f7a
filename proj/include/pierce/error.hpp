#pragma once

#include <stdexcept>
#include <string>

namespace pierce {

enum class ErrorCode {
  DegenerateInput,
  MixedKinds,
  PrecisionExhausted,
  SingularMap,
  DisksNotClosedUnderAffine,
  SearchFailed,
  NotCentrallySymmetric,
  NotHexagon,
  VerificationFailed,
  UnsupportedBase,
  CoverageNotVerified,
  PackingNotVerified,
  TooLarge,
  EpsilonTooLarge,
  ConstructionFailed,
  InvalidFamily,
  Parse,
};

inline const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::MixedKinds: return "MixedKinds";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::SingularMap: return "SingularMap";
    case ErrorCode::DisksNotClosedUnderAffine: return "DisksNotClosedUnderAffine";
    case ErrorCode::SearchFailed: return "SearchFailed";
    case ErrorCode::NotCentrallySymmetric: return "NotCentrallySymmetric";
    case ErrorCode::NotHexagon: return "NotHexagon";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::UnsupportedBase: return "UnsupportedBase";
    case ErrorCode::CoverageNotVerified: return "CoverageNotVerified";
    case ErrorCode::PackingNotVerified: return "PackingNotVerified";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorCode::ConstructionFailed: return "ConstructionFailed";
    case ErrorCode::InvalidFamily: return "InvalidFamily";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pierce
