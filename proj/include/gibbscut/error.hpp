#pragma once

#include <stdexcept>
#include <string>

namespace gibbscut {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad indices, wrong lengths, unparsable files, nonconvex
/// interaction tables.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// The requested solver cannot handle the instance (enumeration cap exceeded,
/// polynomial outside the graph-representable class, nonsubmodular input).
class Infeasible : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Never expected on valid input.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace gibbscut
