#pragma once

#include <stdexcept>
#include <string>

namespace penrose_ctqw {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An index or parameter lies outside its admissible range.
class BoundsError : public Error {
public:
  using Error::Error;
};

/// A precondition on an argument value was violated.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// The eigensolver failed to converge.
class SolverError : public Error {
public:
  using Error::Error;
};

/// Internal invariant broken (should never fire on valid input).
class ConsistencyError : public Error {
public:
  using Error::Error;
};

/// Malformed input file.
class FormatError : public Error {
public:
  using Error::Error;
};

} // namespace penrose_ctqw
