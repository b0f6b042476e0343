#pragma once

#include <stdexcept>
#include <string>

namespace kingman {

/// A distribution or process parameter lies outside its domain.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Self-loops and out-of-range endpoints.
class InvalidEdgeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A merge was requested on a vertex that is not currently a root.
class InvalidMergeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A structure failed its invariant check (forests, distributions, reports).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exhaustive routines refuse inputs beyond desk scale instead of truncating.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kingman
