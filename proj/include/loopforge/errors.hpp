#pragma once

#include <stdexcept>
#include <string>

namespace loopforge {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A permutation expected to send every x to x or -x did not.
class NotFlipMap : public Error {
 public:
  using Error::Error;
};

/// An enumeration exceeded its element cap or a search exceeded its size cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace loopforge
