#pragma once

#include <stdexcept>
#include <string>

namespace dundee {

/// Root of every error the engines raise. Each subclass maps to a distinct
/// CLI exit code and HTTP status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed deck or bid text.
class NotationError : public Error {
 public:
  using Error::Error;
};

/// An argument violates an operation's precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A brute-force routine refused an input beyond its configured size.
class SizeGuardError : public Error {
 public:
  using Error::Error;
};

/// An advisor session id that does not exist.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// An action on a finished session, or a stale version tag.
class ConflictError : public Error {
 public:
  using Error::Error;
};

}  // namespace dundee
