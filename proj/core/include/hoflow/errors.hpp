#pragma once

#include <stdexcept>
#include <string>

namespace hoflow {

/// Base class of every recoverable failure raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or truncated encoded image bytes. Messages name the byte offset.
class DecodeError : public Error {
 public:
  using Error::Error;
};

/// Image too small for an operation's stencil support, or degenerate size.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration value (sigma <= 0, negative radius, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Planes or fields that must share dimensions do not.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A flow container that violates its format contract.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Flow file shorter or longer than its header promises.
class TruncationError : public FormatError {
 public:
  using FormatError::FormatError;
};

/// Values outside an encodable range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Filesystem-level failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace hoflow
