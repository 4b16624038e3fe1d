#pragma once

#include <stdexcept>
#include <string>

namespace qs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arc-diagram text. Line and column are 1-based; column 0 means
/// the whole line.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class InvalidDiagram : public Error {
 public:
  using Error::Error;
};

class NotInSymmetrisedSpan : public Error {
 public:
  using Error::Error;
};

class NotACycle : public Error {
 public:
  using Error::Error;
};

class NotRealizable : public Error {
 public:
  using Error::Error;
};

class CalibrationUnresolved : public Error {
 public:
  using Error::Error;
};

}  // namespace qs
