#include "essmod/error.hpp"

namespace essmod {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::EigenvalueAtThreshold: return "EigenvalueAtThreshold";
    case ErrorCode::NotProjection: return "NotProjection";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IrrationalRoot: return "IrrationalRoot";
    case ErrorCode::GeneratorsNotSpanning: return "GeneratorsNotSpanning";
    case ErrorCode::NoRoom: return "NoRoom";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::SampleNotInDefect: return "SampleNotInDefect";
    case ErrorCode::NoGeneratorDefect: return "NoGeneratorDefect";
    case ErrorCode::SizeCap: return "SizeCap";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::Cancelled: return "Cancelled";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace essmod
