#pragma once

#include <stdexcept>
#include <string>

namespace bl {

// Plan not deep enough for the requested radius or strip.
struct DepthError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Quadrature or cancellation budget exceeded.
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace bl
