#pragma once

#include <stdexcept>
#include <string>

namespace vvmf {

/// Base of every error raised by the library. The CLI maps each subclass to
/// its own exit code.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
    [[nodiscard]] virtual const char* kind() const noexcept = 0;
    [[nodiscard]] virtual int exitCode() const noexcept = 0;
};

/// Malformed or out-of-range user input (bad Gram matrix, bad parameters).
class InputError : public Error {
  public:
    using Error::Error;
    [[nodiscard]] const char* kind() const noexcept override { return "bad_input"; }
    [[nodiscard]] int exitCode() const noexcept override { return 2; }
};

/// A well-formed request outside the supported constructive scope.
class UnsupportedError : public Error {
  public:
    using Error::Error;
    [[nodiscard]] const char* kind() const noexcept override { return "unsupported"; }
    [[nodiscard]] int exitCode() const noexcept override { return 3; }
};

/// A truncated expansion does not reach the exponents a computation needs.
class PrecisionError : public Error {
  public:
    using Error::Error;
    [[nodiscard]] const char* kind() const noexcept override { return "precision"; }
    [[nodiscard]] int exitCode() const noexcept override { return 4; }
};

/// An identity that must hold exactly failed, or the ambient field was
/// configured too small. Always a bug signal.
class InternalError : public Error {
  public:
    using Error::Error;
    [[nodiscard]] const char* kind() const noexcept override { return "internal"; }
    [[nodiscard]] int exitCode() const noexcept override { return 5; }
};

/// The ambient cyclotomic order does not contain a requested root of unity.
class ConfigurationError : public InternalError {
  public:
    using InternalError::InternalError;
    [[nodiscard]] const char* kind() const noexcept override { return "configuration"; }
};

} // namespace vvmf
