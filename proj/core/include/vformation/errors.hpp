#pragma once

#include <exception>
#include <stdexcept>
#include <string>

namespace vform {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input violates a documented invariant. `field()` names the offending
/// quantity (for example `leader.taper_ratio`).
class ValidationError : public Error {
 public:
  ValidationError(std::string field, std::string message)
      : Error(field + ": " + message), field_(std::move(field)), detail_(std::move(message)) {}

  const std::string& field() const noexcept { return field_; }
  /// The message without the field prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string field_;
  std::string detail_;
};

/// Malformed configuration text (syntax, unknown keys, bad numbers).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Argument outside an operation's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Singular or ill-conditioned systems, non-finite results.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Rethrows `error` with `context` prepended to its message, keeping the
/// exception type. Non-library exceptions are rethrown unchanged.
[[noreturn]] void rethrow_with_context(const std::exception_ptr& error, const std::string& context);

}  // namespace vform
