#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bppm {

// Bad argument to an operation (range, shape, or precondition violation).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input data that parses but violates a domain invariant (self-loop, negative time, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Hawkes simulation exceeded its event ceiling (alpha >= beta runaway).
class SupercriticalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bppm
