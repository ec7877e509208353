#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pvalent {

enum class ErrorKind {
  NegativeCoefficient,
  IndexBelowValence,
  DuplicateIndex,
  OrderExceedsValence,
  ValenceMismatch,
  NonpositiveArgument,
  ParameterOutOfRange,
  RadiusOutOfRange,
  QuadratureUnavailable,
  DivergentInput,
  ExponentUnderflow,
  DegenerateDenominator,
  PoleOnGrid,
  BadFlag,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Raised for every violated precondition in the library. The kind is stable
/// and is what the CLI reports in its machine-readable error object.
class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorKind kind, const std::string& message,
              std::optional<std::complex<double>> location = std::nullopt)
      : std::runtime_error(message), kind_(kind), location_(location) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// Point of the unit disk where the failure was detected, if any.
  const std::optional<std::complex<double>>& location() const noexcept {
    return location_;
  }

 private:
  ErrorKind kind_;
  std::optional<std::complex<double>> location_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw DomainError(kind, message);
}

}  // namespace pvalent
