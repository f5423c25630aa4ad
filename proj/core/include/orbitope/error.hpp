#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orbitope {

/// Machine-readable failure categories shared by every module and the CLI.
enum class ErrorCode {
  MalformedJson,
  UnknownField,
  MissingField,
  UnknownFamily,
  InvalidSize,
  DegenerateFamily,
  LengthMismatch,
  SuSumNonzero,
  InvalidValue,
  NotInGroup,
  NotInAlgebra,
  CapExceeded,
  PatternMismatch,
  IntegrationOnly,
  Infeasible,
  NumericOverflow,
  Internal,
};

/// Stable upper-snake identifier, e.g. "DEGENERATE_FAMILY".
std::string_view error_code_name(ErrorCode code);

/// Process exit status the CLI reports for a given error code.
int exit_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace orbitope
