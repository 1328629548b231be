#pragma once

#include <stdexcept>
#include <string>

namespace qkrylov {

/// Base class for all library errors so callers can catch one type.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyHamiltonian : Error {
  using Error::Error;
};

struct QubitMismatch : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

/// Malformed Hamiltonian text. Carries 1-based line/column of the offending
/// character (column 0 when the whole line is at fault).
struct ParseError : Error {
  ParseError(const std::string& what, int line, int column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line(line),
        column(column) {}
  int line;
  int column;
};

struct SizeGuard : Error {
  using Error::Error;
};

struct ConvergenceFailure : Error {
  using Error::Error;
};

struct NotNormalized : Error {
  using Error::Error;
};

struct LengthMismatch : Error {
  using Error::Error;
};

/// Thresholded eigensolve kept no directions: the threshold exceeds every
/// eigenvalue of the overlap matrix.
struct AllDiscarded : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

/// The bound's denominator is nonpositive; the bound is vacuous for these
/// parameters.
struct DenominatorInvalid : Error {
  using Error::Error;
};

struct EmptyInput : Error {
  using Error::Error;
};

}  // namespace qkrylov
