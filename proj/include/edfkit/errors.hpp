#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace edfkit {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed task-file document.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A task set or parameter block violating a model invariant.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what,
                           std::optional<std::size_t> index = std::nullopt)
      : Error(index ? what + " at index " + std::to_string(*index) : what),
        index_(index) {}

  /// Offending task index, when the error concerns a single task.
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  std::optional<std::size_t> index_;
};

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A value does not fit the fixed-width integer type it must be stored in.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// No feasibility horizon can be computed (U >= 1 for the analytic bounds,
/// or hyperperiod overflow on the U = 1 fallback).
class HorizonUnavailable : public Error {
 public:
  using Error::Error;
};

/// The requested test does not apply to the given task set.
class InapplicableTest : public Error {
 public:
  using Error::Error;
};

/// A caller broke a documented precondition.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace edfkit
