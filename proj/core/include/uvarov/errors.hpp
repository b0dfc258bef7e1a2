#pragma once

#include <stdexcept>
#include <string>

namespace uvarov {

/// Caller supplied something outside a documented precondition
/// (bad dimension, off-simplex point, malformed mass specification).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical step failed: singular factorization, calibration mismatch,
/// non-positive pivot in an orthonormalization.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace uvarov
