#pragma once

#include <stdexcept>
#include <string>

#include "sessc/names.hpp"

namespace sessc {

enum class ErrorKind {
  Unbound,
  LinearUnused,
  LinearReused,
  Mismatch,
  NotSession,
  BranchMismatch,
  UnlimitedViolation,
  NotDual,
  Ambiguous,  // a binder type could not be determined by inference
};

const char *to_string(ErrorKind k);

class TypeError : public std::runtime_error {
 public:
  TypeError(ErrorKind kind, const std::string &msg, SourceLoc loc = {})
      : std::runtime_error(msg), kind_(kind), loc_(loc) {}
  ErrorKind kind() const { return kind_; }
  SourceLoc loc() const { return loc_; }

 private:
  ErrorKind kind_;
  SourceLoc loc_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string &msg, int line, int column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace sessc
