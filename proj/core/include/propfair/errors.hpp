#pragma once

#include <stdexcept>
#include <string>

namespace propfair {

// Bad user input: malformed config, invalid argument values, dimension
// mismatches. The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested an exhaustive search larger than the configured guard.
class SizingError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// All rates are zero, so normalized rate shares are undefined.
class DegenerateRatesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace propfair
