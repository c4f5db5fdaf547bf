#include "qfisher/error.hpp"

namespace qfisher {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonHermitianInput: return "NonHermitianInput";
    case ErrorKind::NotPositiveSemidefinite: return "NotPositiveSemidefinite";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::ChartSingularity: return "ChartSingularity";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::TableResolutionError: return "TableResolutionError";
    case ErrorKind::SupportMismatch: return "SupportMismatch";
    case ErrorKind::InvalidPovm: return "InvalidPovm";
    case ErrorKind::NotAPovm: return "NotAPovm";
    case ErrorKind::NotOrthogonal: return "NotOrthogonal";
    case ErrorKind::NotTangentForm: return "NotTangentForm";
    case ErrorKind::ZeroVelocityCurve: return "ZeroVelocityCurve";
    case ErrorKind::DegenerateSld: return "DegenerateSld";
    case ErrorKind::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

}  // namespace qfisher
