#pragma once

#include <stdexcept>
#include <string>

namespace permgrid {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input (permutations, matrices, bases, downsets, rectangles).
class ParseError : public Error {
public:
  using Error::Error;
};

/// An operation was called with arguments that violate its precondition.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// A configured resource cap (stored permutations) was exceeded.
class ResourceError : public Error {
public:
  using Error::Error;
};

} // namespace permgrid
