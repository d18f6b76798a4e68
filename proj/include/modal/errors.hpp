#pragma once

#include <stdexcept>
#include <string>

namespace modal {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two objects were combined whose alphabets differ.
struct AlphabetMismatch : Error {
  using Error::Error;
};

/// A documented operation precondition was violated (unguarded formula,
/// nondeterministic quotient operand, invalid generator configuration, ...).
struct PreconditionError : Error {
  using Error::Error;
};

/// Structural invariant violated while constructing a value
/// (undeclared state, duplicate label, inconsistent normal form, ...).
struct InvalidValue : Error {
  using Error::Error;
};

/// Syntax error in a text document, annotated with a position.
struct ParseError : Error {
  ParseError(int line, int col, const std::string& what)
      : Error("line " + std::to_string(line) + ", col " + std::to_string(col) +
              ": " + what),
        line(line),
        col(col) {}

  int line;
  int col;
};

}  // namespace modal
