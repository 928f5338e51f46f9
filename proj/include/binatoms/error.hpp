#pragma once

#include <stdexcept>
#include <string>

namespace binatoms {

/// Invalid parameters or a violated precondition. Maps to CLI exit code 1.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematically undefined request, e.g. the valuation of zero.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A configured budget (memory, candidate count) would be exceeded.
/// Maps to CLI exit code 3.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace binatoms
