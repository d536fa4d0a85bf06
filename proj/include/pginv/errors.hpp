#pragma once

#include <stdexcept>
#include <string>

namespace pginv {

// Dimension or algebra mismatch between operands.
struct ShapeError : std::runtime_error {
  explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

// A documented operation precondition does not hold for the given input.
struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid argument values (rank profiles, block specs, ...).
struct ArgumentError : std::runtime_error {
  explicit ArgumentError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure (non-convergence, non-finite data).
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Input has a spectrum or structure incompatible with the requested
// decomposition (e.g. a stray eigenvalue diagnosing a non-tripotent).
struct StructureError : std::runtime_error {
  explicit StructureError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed instance files / JSON.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pginv
