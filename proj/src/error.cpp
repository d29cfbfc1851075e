#include "anc/error.hpp"

namespace anc {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::EmptyShape: return "EmptyShape";
    case ErrorCode::NoColimit: return "NoColimit";
    case ErrorCode::BiasRequired: return "BiasRequired";
    case ErrorCode::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorCode::InvalidWindow: return "InvalidWindow";
    case ErrorCode::DeltaColimitFailed: return "DeltaColimitFailed";
    case ErrorCode::BaseColimitFailed: return "BaseColimitFailed";
    case ErrorCode::PathOutOfRange: return "PathOutOfRange";
    case ErrorCode::DimensionViolation: return "DimensionViolation";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotGlobular: return "NotGlobular";
    case ErrorCode::ConeMapMissing: return "ConeMapMissing";
    case ErrorCode::ExpansionUnsupported: return "ExpansionUnsupported";
    case ErrorCode::RegularPropagationImpossible: return "RegularPropagationImpossible";
    case ErrorCode::LabelFusionRejected: return "LabelFusionRejected";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::UnknownDiagram: return "UnknownDiagram";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::VersionUnsupported: return "VersionUnsupported";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::NothingToUndo: return "NothingToUndo";
    case ErrorCode::AssertionFailed: return "AssertionFailed";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& reason, std::optional<int> step,
             std::optional<std::size_t> height)
    : std::runtime_error(std::string(to_string(code)) + ": " + reason),
      code_(code),
      reason_(reason),
      step_(step),
      height_(height) {}

}  // namespace anc
