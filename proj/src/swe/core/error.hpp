#pragma once
#include <stdexcept>

namespace swe {

// Thrown when a numerical procedure breaks down (solver divergence, loss of
// positive definiteness, non finite state). The CLI maps this to exit code 3.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace swe
