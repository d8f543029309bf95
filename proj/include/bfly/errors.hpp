#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bfly {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed edge-list input. `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Invalid engine configuration (budget, thread count, sampling probability).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An oracle refused an input above its size guard.
class GuardError : public Error {
 public:
  using Error::Error;
};

/// Internal invariant violated, e.g. an odd per-vertex edge sum.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace bfly
