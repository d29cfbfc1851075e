#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace anc {

enum class ErrorCode {
  SizeMismatch,
  IndexOutOfRange,
  NotMonotone,
  NotConnected,
  EmptyShape,
  NoColimit,
  BiasRequired,
  BoundaryMismatch,
  InvalidWindow,
  DeltaColimitFailed,
  BaseColimitFailed,
  PathOutOfRange,
  DimensionViolation,
  DimensionMismatch,
  NotGlobular,
  ConeMapMissing,
  ExpansionUnsupported,
  RegularPropagationImpossible,
  LabelFusionRejected,
  UnknownLabel,
  UnknownDiagram,
  DuplicateName,
  ParseError,
  VersionUnsupported,
  ValidationFailed,
  NothingToUndo,
  AssertionFailed,
};

const char* to_string(ErrorCode code);

// Library failure. `step` and `height` locate failures inside multi-step
// procedures (colimit construction, move propagation) when known.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& reason,
        std::optional<int> step = std::nullopt,
        std::optional<std::size_t> height = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  const std::string& reason() const noexcept { return reason_; }
  std::optional<int> step() const noexcept { return step_; }
  std::optional<std::size_t> height() const noexcept { return height_; }

 private:
  ErrorCode code_;
  std::string reason_;
  std::optional<int> step_;
  std::optional<std::size_t> height_;
};

}  // namespace anc
