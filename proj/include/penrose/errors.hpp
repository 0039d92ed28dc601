#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace penrose {

/// Failure categories raised by the pipeline stages.
enum class ErrorKind {
  InvalidInput,
  NoHorizon,
  AsymptoticMismatch,
  PreconditionViolation,
  BlowupEscape,
  DecayViolation,
  CapOutOfRange,
  SolveFailure,
  NonPositive,
  DegenerateDenominator,
  BoundViolation,
  Io,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NoHorizon: return "NoHorizon";
    case ErrorKind::AsymptoticMismatch: return "AsymptoticMismatch";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
    case ErrorKind::BlowupEscape: return "BlowupEscape";
    case ErrorKind::DecayViolation: return "DecayViolation";
    case ErrorKind::CapOutOfRange: return "CapOutOfRange";
    case ErrorKind::SolveFailure: return "SolveFailure";
    case ErrorKind::NonPositive: return "NonPositive";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::BoundViolation: return "BoundViolation";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Exception carrying an ErrorKind. The harness attaches the stage name
/// ("radial_core", "jang_solver", ...) when it re-throws.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::string stage = {})
      : std::runtime_error(what), kind_(kind), stage_(std::move(stage)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& stage() const noexcept { return stage_; }

  Error with_stage(std::string stage) const { return Error(kind_, what(), std::move(stage)); }

 private:
  ErrorKind kind_;
  std::string stage_;
};

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) throw Error(kind, message);
}

}  // namespace penrose
