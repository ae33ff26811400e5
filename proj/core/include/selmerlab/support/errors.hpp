#pragma once

#include <stdexcept>
#include <string>

namespace selmerlab {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside an operation's domain (bad shape, non-monic input, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// An enumeration or search would exceed its configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// A checked internal invariant failed. Reaching this is a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

inline void ensure(bool ok, const std::string& what) {
  if (!ok) throw InvariantViolation(what);
}

}  // namespace selmerlab
