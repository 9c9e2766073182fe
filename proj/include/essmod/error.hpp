#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace essmod {

enum class ErrorCode {
  NotHermitian,
  NoConvergence,
  DomainError,
  EigenvalueAtThreshold,
  NotProjection,
  ZeroInput,
  ShapeMismatch,
  OutOfRange,
  DimensionMismatch,
  IrrationalRoot,
  GeneratorsNotSpanning,
  NoRoom,
  PreconditionFailed,
  SampleNotInDefect,
  NoGeneratorDefect,
  SizeCap,
  SchemaError,
  Cancelled,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace essmod
