#pragma once

#include <stdexcept>
#include <string>

namespace acprg {

/// Operands live in different ambient dimensions.
class DimensionMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive routine was asked to work beyond its configured cap.
class CapExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A query oracle could not answer a queried index.
class OracleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Structurally invalid input (bad witness lists, starred inputs, bad parameters).
class MalformedInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

}  // namespace acprg
