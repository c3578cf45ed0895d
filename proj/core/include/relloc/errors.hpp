#pragma once

#include <stdexcept>
#include <string>

namespace relloc {

// Rejected argument values: bad sizes, nonpositive scales, malformed input.
class InvalidParameterError : public std::invalid_argument {
 public:
  explicit InvalidParameterError(const std::string& what)
      : std::invalid_argument(what) {}
};

// Step size violates the stability bound for the graph in use.
class StepSizeError : public InvalidParameterError {
 public:
  explicit StepSizeError(const std::string& what)
      : InvalidParameterError(what) {}
};

// A generator could not produce an object satisfying its postconditions.
class ConstructionError : public std::runtime_error {
 public:
  explicit ConstructionError(const std::string& what)
      : std::runtime_error(what) {}
};

// A numerical routine failed to meet its accuracy contract.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace relloc
