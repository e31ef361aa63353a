#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace evfusion {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested structure or computation exceeds a configured cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Operands belong to different lattice contexts.
class ContextMismatchError : public Error {
 public:
  using Error::Error;
};

/// The operation is not defined for the lattice kind (e.g. complement
/// of a hyperpowerset element).
class UnsupportedOperationError : public Error {
 public:
  using Error::Error;
};

/// An assignment would violate m(0) = 0.
class ContradictionError : public Error {
 public:
  using Error::Error;
};

/// An argument is outside the operation's domain (negative mass,
/// unnormalized input, index out of range, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Every sampled or enumerated tuple was rejected; the combination has
/// no renormalizable mass left.
class TotalConflictError : public Error {
 public:
  using Error::Error;
};

/// Expression text could not be evaluated. Carries the byte offset of
/// the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A scenario document is missing, malformed, or fails validation.
class ScenarioError : public Error {
 public:
  using Error::Error;
};

}  // namespace evfusion
