#pragma once

#include <stdexcept>
#include <string>

namespace scoutplan {

enum class ErrorCode {
  OutOfBounds,
  MalformedFile,
  IoError,
  PlacementFailed,
  StartOccupied,
  TargetOccupied,
  StallDetected,
  MaxStepsExceeded,
  NonFiniteObjective,
  Infeasible,
  MaxSweepsExceeded,
  InvalidConfig,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::MalformedFile: return "MalformedFile";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::PlacementFailed: return "PlacementFailed";
    case ErrorCode::StartOccupied: return "StartOccupied";
    case ErrorCode::TargetOccupied: return "TargetOccupied";
    case ErrorCode::StallDetected: return "StallDetected";
    case ErrorCode::MaxStepsExceeded: return "MaxStepsExceeded";
    case ErrorCode::NonFiniteObjective: return "NonFiniteObjective";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::MaxSweepsExceeded: return "MaxSweepsExceeded";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code),
        detail_(std::move(detail)) {}

  ErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace scoutplan
