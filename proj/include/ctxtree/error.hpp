#pragma once

#include <stdexcept>
#include <string>

namespace ctxtree {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or empty input text, or a symbol outside a fixed alphabet.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Position, length or parameter outside its documented range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A count query deeper than the index was built for. Distinct from a
/// count of zero.
class DepthExceeded : public RangeError {
 public:
  using RangeError::RangeError;
};

/// Persisted artifact that cannot be read back (bad magic, version,
/// alphabet mismatch, truncation).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// An average over zero matched positions.
class UndefinedAverage : public Error {
 public:
  using Error::Error;
};

}  // namespace ctxtree
