#pragma once

#include <stdexcept>
#include <string>

namespace lgce {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Incompatible tensor shapes, channel counts or image dimensions.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// NaN or Inf appeared in values, gradients or losses.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Malformed, truncated or missing input files and datasets.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Misuse of the autograd graph (non-scalar loss, freed graph).
class GraphError : public Error {
 public:
  using Error::Error;
};

}  // namespace lgce
