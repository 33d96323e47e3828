#pragma once

#include <stdexcept>
#include <string>

namespace simjoin {

// Operands of different dimension were combined.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A documented precondition on the arguments does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration or quadratic-scan guard would be exceeded.
class GuardExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Exact integer arithmetic would wrap.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Malformed external input (point files, configs).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace simjoin
