#pragma once

#include <stdexcept>

namespace cdsum {

/// Raised when input data cannot be summarized or evaluated (empty corpus,
/// missing gold standard, malformed record file). Precondition violations on
/// numeric arguments use std::invalid_argument instead.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cdsum
