#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace invseq {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad words, bad pattern sets, unknown catalog names.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A node or memo budget was exhausted before the computation finished.
class ResourceLimit : public Error {
 public:
  ResourceLimit(const std::string& what, std::uint64_t used)
      : Error(what + " (budget exhausted after " + std::to_string(used) + " units)"),
        used_(used) {}

  std::uint64_t used() const noexcept { return used_; }

 private:
  std::uint64_t used_;
};

/// Rule document syntax or semantic error, with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// Violated internal invariant (non-integral closed form, leftover Laurent
/// terms, guard violated during counting). Signals a bug, not bad input.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace invseq
