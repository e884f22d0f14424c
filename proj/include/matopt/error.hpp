#pragma once

#include <stdexcept>
#include <string>

namespace matopt {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// The request is well-formed but refers to objects outside the instance's
/// domain: unknown element ids, loops where non-loops are required, ranks
/// exceeding the ground set, and similar.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation was violated by the caller,
/// e.g. passing a set that is not a basis, or overlapping minor sets.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input: rationals, instance files, CLI values.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration was requested on an instance larger than the
/// configured cap allows.
class CapError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed. Indicates a bug in this library or an
/// independence oracle that does not describe a matroid.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// Bad command-line invocation (reserved for the CLI layer).
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace matopt
