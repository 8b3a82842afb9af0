#pragma once

#include <stdexcept>
#include <string>

namespace homsym {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  ParseError(int line, int col, const std::string& msg)
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line;
  int col;
};

struct DivisionByZeroError : Error {
  using Error::Error;
};

struct PoleError : Error {
  using Error::Error;
};

struct UnboundAtomError : Error {
  using Error::Error;
};

struct CycleError : Error {
  using Error::Error;
};

// Misuse of an operation: bad argument ranges, unsupported combinations.
struct DomainError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace homsym
