#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cochange {

/// Base of every error raised by the toolchain.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Invalid configuration: overlapping windows, bad glob, unknown metric set.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Input values violate a documented precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Input is well-formed but carries no information for the requested measure
/// (empty window, edgeless graph, zero variance, all-tied blocks).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cochange
