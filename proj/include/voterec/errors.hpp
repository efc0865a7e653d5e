#pragma once

#include <stdexcept>
#include <string>

namespace voterec {

// Malformed files, violated preconditions, missing upstream artifacts. CLI exit 1.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure, e.g. a diverging training loop. CLI exit 2.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// An exact solver refused an instance beyond its enumeration guard. CLI exit 3.
struct InstanceTooLargeError : std::runtime_error {
  explicit InstanceTooLargeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace voterec
