#pragma once

#include <stdexcept>
#include <string>

namespace qcluster {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or invalid user input (files, matrices, indices).
class InputError : public Error {
 public:
  using Error::Error;
};

// Text input that failed to parse. line() is 1-based, 0 when not tied to a line.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, int line = 0)
      : InputError(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

// An analysis precondition does not hold, e.g. a disconnected graph passed
// to an operation that needs a single zero Laplacian eigenvalue.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// The gain designer cannot realize the requested stability split.
class DesignError : public Error {
 public:
  using Error::Error;
};

// Non-convergence or non-finite values during a numerical computation.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcluster
