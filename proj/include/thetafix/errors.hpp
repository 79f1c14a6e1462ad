#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace thetafix {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point was handed to a space or map whose domain does not contain it.
class DomainMismatch : public Error {
 public:
  using Error::Error;
};

/// An argument outside the mathematical domain of a function (e.g. s < 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Catalog parameters that violate the constraints of their kind.
class ParameterError : public Error {
 public:
  using Error::Error;
};

class UnknownKind : public Error {
 public:
  using Error::Error;
};

/// Precondition failure on a diagnostic input, e.g. a trace that is too short.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace thetafix
