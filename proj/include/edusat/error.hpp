// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace edusat {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula text. `position()` is the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(const std::string& name)
      : Error("unbound variable '" + name + "'"), name_(name) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class TooManyVariables : public Error {
 public:
  TooManyVariables(std::size_t count, std::size_t limit)
      : Error("too many variables: " + std::to_string(count) + " (limit " + std::to_string(limit) + ")") {}
};

class FormulaError : public Error {
 public:
  using Error::Error;
};

class DimacsError : public Error {
 public:
  using Error::Error;
};

/// Variable order handed to the ROBDD builders is not usable for the formula.
class OrderError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Integer arithmetic that has no defined result (zero divisor, overflow).
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public ArithmeticError {
 public:
  DivisionByZero() : ArithmeticError("division by zero") {}
};

class BoundsError : public Error {
 public:
  using Error::Error;
};

/// Malformed NP-complete problem instance or model.
class InstanceError : public Error {
 public:
  using Error::Error;
};

/// A decoded solution failed its problem's native check.
class InvalidSolution : public Error {
 public:
  using Error::Error;
};

}  // namespace edusat
