#pragma once

#include <stdexcept>
#include <string>

namespace zeno {

// Input violated a documented precondition. The message names the constraint.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Request exceeds a hard size cap (oracle word count, register width, grid size).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace zeno
