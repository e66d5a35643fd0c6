#pragma once

#include <stdexcept>
#include <string>

namespace fkit {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input (JSON, field or algebra strings). CLI exit code 2.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Mathematically invalid request. CLI exit code 3.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public DomainError {
 public:
  DivisionByZero() : DomainError("division by zero") {}
};

class DescriptorMismatch : public DomainError {
 public:
  explicit DescriptorMismatch(const std::string& what = "scalars from different fields")
      : DomainError(what) {}
};

class InvalidParameter : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Enumeration requested on an infinite field or beyond the size budget.
class SizeOverflow : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace fkit
