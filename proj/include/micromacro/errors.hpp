#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mm {

enum class ErrorKind {
  InvalidDimension,
  InvalidOperator,
  InvalidArgument,
  DimensionMismatch,
  ModeOutOfRange,
  ZeroState,
  ImpossibleOutcome,
  RequiresNormalized,
  NonHermitian,
  Leakage,
  Convergence,
  Integration,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // True for failures caused by truncation or quadrature limits rather than bad input.
  bool is_numerical() const noexcept {
    return kind_ == ErrorKind::Convergence || kind_ == ErrorKind::Integration || kind_ == ErrorKind::Leakage;
  }

 private:
  ErrorKind kind_;
};

}  // namespace mm
