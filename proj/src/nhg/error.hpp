#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace nhg {

enum class ErrorCode {
  kParse,
  kUnknownVariable,
  kDivisionByZero,
  kPole,
  kDomain,
  kContextMismatch,
  kInvalidArgument,
  kIndeterminate,
  kSingularJacobian,
  kSolutionCheck,
  kUnsupported,
  kProximity,
  kStepUnderflow,
  kNonFinite,
  kBlowUp,
  kSchema,
  kIo,
  kMissingSection,
  kInternal,
};

const char* error_code_name(ErrorCode code);

/// Single exception type thrown by the toolkit. The code drives the C API
/// status mapping; the position is set for parse errors only.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  Error(ErrorCode code, const std::string& message, std::size_t position)
      : std::runtime_error(message), code_(code), position_(position) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> position_;
};

}  // namespace nhg
