#pragma once

#include <stdexcept>
#include <string>

namespace fibl {

/// Argument outside the mathematical domain of an operation (negative index,
/// zero theta argument, |p| >= 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A configured resource cap (polynomial degree, enumeration count) would be
/// exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A theta denominator is too close to zero for the current parameters.
class DegenerateParameters : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fibl
