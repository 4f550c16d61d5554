#pragma once

#include <stdexcept>
#include <string>

namespace figop {

// Invalid numeric parameter (non-finite, out of range).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Caller violated an operation's precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Argument outside the operation's domain, e.g. a query on a non-free cell.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Problem too large for an exact method.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Malformed text input. Carries the 1-based line and column.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column = 1)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace figop
