#pragma once

#include <stdexcept>

namespace qspecies {

// Base class for all library failures.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mismatched or invalid vector / matrix / factor dimensions.
struct DimensionError : Error {
  using Error::Error;
};

// Invalid argument values (out-of-range indices, unnormalized inputs, ...).
struct ArgumentError : Error {
  using Error::Error;
};

// Requested operation would exceed the total-dimension cap.
struct CapacityError : Error {
  using Error::Error;
};

// Image set of a linear extension fails orthonormality.
struct IsometryError : Error {
  using Error::Error;
};

// A state pair required to be linearly independent is (numerically) dependent.
struct DegenerateInputError : Error {
  using Error::Error;
};

// A requested success probability lies above the feasible maximum.
struct InfeasibleError : Error {
  using Error::Error;
};

// Input violates the hypothesis of the check being run.
struct DomainError : Error {
  using Error::Error;
};

}  // namespace qspecies
