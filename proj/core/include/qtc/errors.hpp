#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qtc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. `position` is a 0-based byte offset into the source.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Operands live in different dimensions or different theta contexts.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A nonsingular integer matrix was required.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// A precondition on the value of an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Inputs that are individually well formed but mutually inconsistent
/// (a violated lattice relation, lifts that do not match a homomorphism, ...).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// The associator of a graded system is not the coboundary of any
/// normalized scalar 2-cochain.
class ObstructionError : public Error {
 public:
  using Error::Error;
};

}  // namespace qtc
