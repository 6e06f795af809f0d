#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace specalloc {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside an operation's domain (caller bug, not a model regime).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The model has no finite optimum for the input, e.g. S = 0.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine exhausted its budget or saw a non-finite value.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Malformed scenario document.
class SyntaxError : public Error {
 public:
  using Error::Error;
};

/// A scenario field violates a schema or model constraint.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error(message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace specalloc
