#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace groupcalc {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of a group function or operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative method (root finding, inverse iteration) did not converge.
class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what, long index = -1)
      : Error(what), index_(index) {}
  /// Failing eigenvalue index, or -1 when not applicable.
  long index() const noexcept { return index_; }

 private:
  long index_;
};

/// Adaptive quadrature hit its depth limit before meeting the tolerance.
class ToleranceNotMet : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in a class specification or expression.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset,
             std::vector<std::string> expected = {})
      : Error(what), offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

}  // namespace groupcalc
