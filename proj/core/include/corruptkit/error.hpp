#pragma once

#include <stdexcept>
#include <string>

namespace corruptkit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (bad file, bad argument, bad schema).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// I/O failure while reading or writing a file.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace corruptkit
