#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pcforge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed DIMACS input. `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// An enumeration cap (variables, models, clauses) would be exceeded.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside of its domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class TautologyError : public PreconditionError {
 public:
  TautologyError() : PreconditionError("formula contains a tautological clause") {}
};

class EmptyClauseError : public PreconditionError {
 public:
  EmptyClauseError() : PreconditionError("formula contains the empty clause") {}
};

class UnsatisfiableError : public PreconditionError {
 public:
  UnsatisfiableError() : PreconditionError("formula is unsatisfiable") {}
};

class NotQHornError : public PreconditionError {
 public:
  NotQHornError() : PreconditionError("formula is not q-Horn") {}
};

}  // namespace pcforge
