#pragma once

#include <stdexcept>
#include <string>

namespace fracpm {

/// Failure categories. The numeric exit code of each category is part of the
/// command line contract (see `exit_code`).
enum class ErrorKind {
  InvalidArgument,    // caller bug: wrong dimension, grid mismatch, bad range
  NonFinite,          // NaN or Inf reached a field
  Config,             // unparsable or inconsistent run configuration
  Geometry,           // jump set not resolved by the grid, probe on Gamma
  ExcludedParameter,  // eps = 1/2 where a sign-definite claim was requested
  BlowUp,             // evolution diverged
  LinearAlgebra,      // solver failure or rank-deficient deflation
  Tolerance,          // a series evaluator cannot reach its target accuracy
  VerifyFailure,      // at least one acceptance criterion failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// 0 ok, 1 verify-fail, 2 config/geometry, 3 excluded parameter, 4 blow-up,
/// 5 linear algebra. Everything else maps to 2.
[[nodiscard]] int exit_code(ErrorKind kind) noexcept;

[[nodiscard]] const char* to_string(ErrorKind kind) noexcept;

}  // namespace fracpm
