#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace antirb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// Malformed scalar or document text. `position()` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class AlgebraMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidFamilyParams : public Error {
 public:
  using Error::Error;
};

class WindowTooSmall : public Error {
 public:
  using Error::Error;
};

/// A family constructor was called on its excluded locus; the message names
/// the violated non-vanishing condition.
class ExcludedLocus : public Error {
 public:
  explicit ExcludedLocus(std::string condition)
      : Error("excluded locus: " + condition), condition_(std::move(condition)) {}
  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

class SingularMatrix : public Error {
 public:
  SingularMatrix() : Error("singular matrix") {}
};

}  // namespace antirb
