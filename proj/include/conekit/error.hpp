#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace conekit {

// Exception hierarchy. The CLI maps each leaf to a fixed exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live on different domains (kind, size or endpoint differ).
class DomainMismatch : public Error {
 public:
  using Error::Error;
};

/// An operator defined on the positive cone received a function with a negative value.
class ConeViolation : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Input file or document could not be parsed. `where` names the offending line or field.
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error(where + ": " + what), where_(where) {}

  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// A normality-constant sample violated 0 <= phi <= psi, psi != 0.
class InvalidPair : public InvalidArgument {
 public:
  InvalidPair(std::size_t index, const std::string& what)
      : InvalidArgument("pair " + std::to_string(index) + ": " + what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace conekit
