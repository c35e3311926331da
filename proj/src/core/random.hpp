#pragma once

#include <cstdint>

#include "core/hilbert.hpp"

namespace qspecies {

// Haar-uniform random pure state: complex Gaussian vector, normalized.
// Deterministic for a fixed seed.
StateVector random_state(int dim, std::uint64_t seed);

// Haar-distributed random unitary: QR factorization of a complex Gaussian
// matrix, with the phases fixed so that R has a real positive diagonal.
// Deterministic for a fixed seed.
UnitaryMatrix random_unitary(int dim, std::uint64_t seed);

}  // namespace qspecies
