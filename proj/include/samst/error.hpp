#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace samst {

enum class ErrorCode {
  DisconnectedInput,
  NonPositiveWeight,
  BadVertexIndex,
  IndexOutOfRange,
  NegativeArgument,
  DomainError,
  Overflow,
  CapExceeded,
  NotASpanningTree,
  DisconnectedState,
  TelemetryMissing,
  InfeasibleSpec,
  NotSeparated,
  ParseError,
  InvalidConfig,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception; `code()` identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace samst
