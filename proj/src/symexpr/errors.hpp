#pragma once

#include <stdexcept>
#include <string>

namespace popsym {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text. `pos` is a 0-based byte offset into the source.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
  std::size_t position;
};

// A jet variable of order >= 5 was requested.
class JetOrderError : public Error {
 public:
  explicit JetOrderError(const std::string& msg) : Error(msg) {}
};

// Numeric evaluation failed: unassigned atom, negative base with fractional
// exponent, log of a non-positive value, overflow, division by zero.
class EvalError : public Error {
 public:
  explicit EvalError(const std::string& msg) : Error(msg) {}
};

// A symbolic operation left its domain (zero denominator at a concrete theta,
// basis-expansion failure, unsatisfiable constraint set, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

}  // namespace popsym
