#pragma once

#include <stdexcept>
#include <string>

namespace chebstep {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree.
struct DimensionError : Error {
  using Error::Error;
};

/// A matrix violates a structural invariant (offsets, ordering, symmetry).
struct InvalidMatrixError : Error {
  using Error::Error;
};

/// A matrix required to be SPD was found not to be (non-positive pivot or
/// diagonal); for Gram systems this signals basis degeneracy.
struct NotSpdError : Error {
  using Error::Error;
};

/// A Krylov basis column became non-finite during construction.
struct BasisBreakdownError : Error {
  BasisBreakdownError(const std::string& what, int col)
      : Error(what), column(col) {}
  int column;
};

/// The outer iteration could not continue (degenerate Gram system).
struct SolverBreakdownError : Error {
  SolverBreakdownError(const std::string& what, int outer)
      : Error(what), outer_iteration(outer) {}
  int outer_iteration;
};

/// An analysis-scale guard (dense eigendecomposition size cap) was exceeded.
struct GuardExceededError : Error {
  using Error::Error;
};

/// Malformed input file.
struct ParseError : Error {
  using Error::Error;
};

/// Invalid configuration or argument value.
struct InvalidArgumentError : Error {
  using Error::Error;
};

}  // namespace chebstep
