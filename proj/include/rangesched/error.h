#pragma once

#include <stdexcept>
#include <string>

namespace rangesched {

// Bad input data or configuration (malformed files, violated preconditions).
class InvalidInput : public std::invalid_argument {
public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// A solver could not produce a result (iteration cap, empty search grid,
// instance too large for the chosen method).
class SolverError : public std::runtime_error {
public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace rangesched
