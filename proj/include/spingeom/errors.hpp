#pragma once

#include <stdexcept>
#include <string>

namespace spingeom {

/// Generator index or matrix size outside what the object supports.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Binary operation on multivectors of different signatures.
struct SignatureMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotInvertible : std::domain_error {
  using std::domain_error::domain_error;
};

/// Input violates a documented precondition (symmetry, parity, range).
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An internal consistency check failed (e.g. a cocycle that is not closed).
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed text or JSON input.
struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace spingeom
