#pragma once

#include <stdexcept>
#include <string>

namespace ssvep {

// Root of every error raised by the library. Callers that only care about
// "usage vs. runtime" can branch on ArgumentError vs. everything else.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed something that violates an operation's precondition.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Data violates a type invariant (non-finite samples, unsorted frequencies...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// File does not carry the expected magic/version.
class FormatError : public Error {
 public:
  using Error::Error;
};

// File header and payload length disagree.
class CorruptionError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Singular covariance, failed decomposition.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Filter design produced an unstable or degenerate realization.
class DesignError : public Error {
 public:
  using Error::Error;
};

}  // namespace ssvep
