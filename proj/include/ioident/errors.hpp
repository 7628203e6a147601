#pragma once

#include <stdexcept>
#include <string>

namespace ioident {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DivisionError : public Error {
public:
  using Error::Error;
};

/// Operands live over different variable sets, or a variable is undeclared.
class ArityError : public Error {
public:
  using Error::Error;
};

class ConstantPolynomialError : public Error {
public:
  using Error::Error;
};

class ZeroPolynomialError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& msg, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

class SingularPointError : public Error {
public:
  using Error::Error;
};

class SamplingError : public Error {
public:
  using Error::Error;
};

class TruncationError : public Error {
public:
  using Error::Error;
};

class UnsupportedFunctionError : public Error {
public:
  using Error::Error;
};

}  // namespace ioident
