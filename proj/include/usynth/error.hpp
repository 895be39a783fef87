#pragma once

#include <stdexcept>
#include <string>

namespace usynth {

// Base for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text (OSM XML, rule files, config documents).
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column = 0)
      : Error(FormatMessage(msg, line, column)), line_(line), column_(column)
  {
  }
  int Line() const { return line_; }
  int Column() const { return column_; }

 private:
  static std::string FormatMessage(const std::string& msg, int line, int column)
  {
    std::string out = msg + " (line " + std::to_string(line);
    if (column > 0) out += ", column " + std::to_string(column);
    out += ")";
    return out;
  }
  int line_ = 0;
  int column_ = 0;
};

// Structurally valid input that violates a domain contract.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

}  // namespace usynth
