#pragma once

#include <stdexcept>
#include <string>

namespace becthermo {

// An iterative scheme ran out of budget before reaching its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad command line, config file, or option combination (CLI exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace becthermo
