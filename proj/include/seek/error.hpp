#pragma once

#include <stdexcept>
#include <string>

namespace seek {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter or config value violates its invariant. `key()` carries the
/// dotted config path when one is known.
class ValidationError : public Error {
 public:
  ValidationError(std::string key, const std::string& what)
      : Error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Config text could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// The requested operation needs analytic derivatives the field lacks.
class UnsupportedFieldError : public Error {
 public:
  using Error::Error;
};

/// Integration produced a non-finite value or was asked to use an illegal step.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class StepSizeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Output could not be written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Two trajectories could not be compared sample-by-sample.
class TimestampMismatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace seek
