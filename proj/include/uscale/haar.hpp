#pragma once

#include <cstddef>

#include "uscale/matcore.hpp"
#include "uscale/rng.hpp"

namespace uscale {

/// Standard complex Gaussian: real and imaginary parts independent N(0, 1/2).
Complex complex_normal(RngStream& rng);

/// Haar-distributed n x n unitary.
///
/// Draws a Ginibre matrix (i.i.d. standard complex Gaussian entries) and
/// orthonormalizes its columns by modified Gram-Schmidt with one
/// re-orthogonalization pass. The implied triangular factor has a positive
/// real diagonal, which is what makes the result Haar rather than merely
/// unitary.
Matrix sample_unitary(std::size_t n, RngStream& rng);

}  // namespace uscale
