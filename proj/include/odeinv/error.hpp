#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace odeinv {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression or input file. `position` is a 0-based offset into
/// the offending text, or npos when the error is not tied to one.
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t position = npos)
      : Error(position == npos ? message
                               : message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t position_;
};

/// Input has the wrong shape for an operation (order, number of equations,
/// jet index out of range, ...).
class ShapeError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by an identically zero expression") {}
};

/// A zero test was requested on an expression that still carries auxiliary
/// symbols, so only a syntactic answer is available.
class SyntacticOnly : public Error {
 public:
  using Error::Error;
};

/// Polynomial growth exceeded the configured degree cap.
class DegreeLimitExceeded : public Error {
 public:
  using Error::Error;
};

/// A sign/commutator convention produced an inconsistent reduction.
class ConventionError : public Error {
 public:
  using Error::Error;
};

/// Internal consistency check failed (two independent computations disagree).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace odeinv
