#pragma once

#include <stdexcept>
#include <string>

namespace hlrc {

/// Caller misuse: mixed fields, wrong lengths, operating on a non-erased symbol.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Mathematically undefined operation, e.g. inverting zero.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Rejected construction or bound parameters (divisibility, gcd, positivity).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An internal invariant failed; indicates a bug or a corrupted code object.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require_param(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

}  // namespace hlrc
