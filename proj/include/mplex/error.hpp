#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mplex {

/// Base class of every exception raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structurally invalid input: out-of-range indices, malformed records.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Values that are well-formed but violate a documented invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Arguments outside the mathematical domain of an operation
/// (support mismatch, contraction factor >= 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The normalized map is undefined because a block evaluates to zero.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mplex
