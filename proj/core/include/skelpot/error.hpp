#pragma once

#include <stdexcept>
#include <string>

namespace skelpot {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or structurally invalid input (bad graph, point off the graph,
// mismatched graphs, unparsable text).
class InputError : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation does not hold for otherwise
// well-formed input (e.g. regularizing a function that is not subharmonic).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Text parse failure with a 1-based position.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : InputError(what + " at line " + std::to_string(line) + ", column " +
                   std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace skelpot
