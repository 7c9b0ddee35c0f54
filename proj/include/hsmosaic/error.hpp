#pragma once

#include <stdexcept>
#include <string>

namespace hsmosaic {

/// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Dimension, band-index, or parameter violations detected at operation entry.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

/// Malformed or truncated files (cube, pattern, CSV, vote table, config).
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what) : Error(what) {}
};

/// Inputs that make the requested estimate undefined (all-zero response
/// curve, zero-win method, disconnected comparison graph).
class DegenerateError : public Error {
 public:
  explicit DegenerateError(const std::string& what) : Error(what) {}
};

}  // namespace hsmosaic
