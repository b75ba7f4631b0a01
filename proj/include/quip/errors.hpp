#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace quip {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Undefined name, redefinition, unknown modal atom in a query and similar
// semantic problems of an input.
class ReferenceError : public Error {
 public:
  using Error::Error;
};

// Node budget of a BDD manager exhausted.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class TimeoutError : public Error {
 public:
  using Error::Error;
};

// Brute-force oracle asked to enumerate beyond its configured bound.
class BoundError : public Error {
 public:
  using Error::Error;
};

// The pipeline contradicted itself (two DL encodings disagree, an SOP term
// mentions an unmapped variable, ...).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace quip
