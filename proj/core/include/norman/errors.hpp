#pragma once

#include <stdexcept>
#include <string>

namespace norman {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. Carries a 1-based position in the source.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(message + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Input parses but names a construct the reader deliberately does not handle
// (e.g. continuous variables).
class UnsupportedFeatureError : public ParseError {
 public:
  using ParseError::ParseError;
};

// Structurally well-formed input that violates a model invariant
// (cycle, bad CPT row, role on a non-binary node, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Conditioning on an event of probability zero. Raised by exact inference;
// never silently turned into a NaN.
class ZeroProbabilityEvidence : public Error {
 public:
  using Error::Error;
};

// The brute-force oracle refuses joint state spaces above its cap.
class StateSpaceTooLarge : public Error {
 public:
  using Error::Error;
};

class UnknownPresetError : public Error {
 public:
  using Error::Error;
};

// Bad run/experiment parameters (CLI maps this to exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace norman
