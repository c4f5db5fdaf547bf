#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qfisher {

enum class ErrorKind {
  NonHermitianInput,
  NotPositiveSemidefinite,
  DimensionMismatch,
  NotNormalized,
  ChartSingularity,
  DomainError,
  TableResolutionError,
  SupportMismatch,
  InvalidPovm,
  NotAPovm,
  NotOrthogonal,
  NotTangentForm,
  ZeroVelocityCurve,
  DegenerateSld,
  DimensionUnsupported,
  NumericalFailure,
  ParseError,
  InvariantViolation,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` is stable and
/// machine-readable, `what()` carries the human-facing detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qfisher
