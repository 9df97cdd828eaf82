#pragma once

#include <stdexcept>
#include <string>

namespace qtc {

//! Operand shapes are incompatible for the requested operation.
class DimensionMismatch : public std::runtime_error {
 public:
  explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

//! The underlying complex SVD failed to converge (numerical breakdown).
class ConvergenceFailure : public std::runtime_error {
 public:
  explicit ConvergenceFailure(const std::string& what) : std::runtime_error(what) {}
};

//! Truncation index r is out of range for the given shape.
class InvalidTruncation : public std::runtime_error {
 public:
  explicit InvalidTruncation(const std::string& what) : std::runtime_error(what) {}
};

//! File could not be read or written.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qtc
