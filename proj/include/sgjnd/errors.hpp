#pragma once

#include <stdexcept>
#include <string>

namespace sgjnd {

// Failure taxonomy shared by every module. Each error carries a kind so
// callers (and the CLI) can emit stable one-line diagnostics and tests can
// assert on the exact failure class instead of parsing messages.
enum class ErrorKind {
  CodecFailure,
  DimensionMismatch,
  OutOfRange,
  LayoutError,
  DegenerateSamples,
  NoConvergence,
  ShapeMismatch,
  ShapeError,
  InfeasiblePatching,
  WeightLoadError,
  EmptyInput,
  LengthMismatch,
  IncompleteSequence,
  InvalidSpec,
  MissingRung,
  DegenerateVariance,
  IoError,
  NonFiniteLoss,
  TooFewRecords,
  InvalidConfig,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::CodecFailure: return "CodecFailure";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::LayoutError: return "LayoutError";
    case ErrorKind::DegenerateSamples: return "DegenerateSamples";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::ShapeError: return "ShapeError";
    case ErrorKind::InfeasiblePatching: return "InfeasiblePatching";
    case ErrorKind::WeightLoadError: return "WeightLoadError";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::IncompleteSequence: return "IncompleteSequence";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::MissingRung: return "MissingRung";
    case ErrorKind::DegenerateVariance: return "DegenerateVariance";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::NonFiniteLoss: return "NonFiniteLoss";
    case ErrorKind::TooFewRecords: return "TooFewRecords";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool ok, ErrorKind kind, const std::string& message) {
  if (!ok) fail(kind, message);
}

}  // namespace sgjnd
