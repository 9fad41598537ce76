#pragma once

#include <stdexcept>
#include <string>

namespace blowdown {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: unknown symbols or curves, duplicates, bad weights.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Arguments outside an operation's mathematical domain, e.g. non-coprime (p, q).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A filling whose declared data cannot define the induced map on first homology.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// The listed classes do not span H2, so the cokernel would only be a quotient of H1.
class SpanningError : public Error {
 public:
  using Error::Error;
};

/// The subgroup-closure oracle refused because the ambient group exceeds its size bound.
class OracleUnavailable : public Error {
 public:
  using Error::Error;
};

/// A fixture reference that names neither a readable file nor a bundled fixture.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Raised on a broken internal invariant. Indicates a bug, never bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// Fixture text that is not well-formed, with line and column in the message.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace blowdown
