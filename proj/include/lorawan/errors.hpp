#pragma once

#include <stdexcept>
#include <string>

namespace lorawan {

// Invalid input: bad parameter values, malformed config files.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical failure inside a solver (singular system, residual too large).
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// The chain has no path to the ACK state (pi[ack] == 0, e.g. alpha == 0),
// so per-ACK expectations are unbounded.
class NoSuccessError : public std::runtime_error {
 public:
  explicit NoSuccessError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lorawan
