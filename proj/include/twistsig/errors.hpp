#pragma once

#include <stdexcept>
#include <string>

namespace twistsig {

// Base of every error the library throws. Messages are user-facing and are
// surfaced verbatim by the CLI.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Asked for a coefficient at or beyond the truncation order.
class TruncationError : public Error {
 public:
  using Error::Error;
};

class NotInvertibleError : public Error {
 public:
  using Error::Error;
};

class DivergentProductError : public Error {
 public:
  using Error::Error;
};

// Two independent constructions of the same object disagreed.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

class ShapeMismatchError : public Error {
 public:
  using Error::Error;
};

// Malformed input: bad arguments, documents, expressions.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace twistsig
