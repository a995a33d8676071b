#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mlext {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A multi-index entry fell outside [1, n].
class InvalidIndexError : public Error {
 public:
  using Error::Error;
};

/// Operands disagree on (m, n) or on vector length.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument is outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configured size or work budget would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input. `position` is a 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at offset " + std::to_string(position) + ")"), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Stored data failed its integrity check.
class ChecksumError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant did not hold; indicates a bug, never bad input.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace mlext
