#pragma once

#include <cstdint>
#include <random>

#include "accinfo/linalg.hpp"

namespace accinfo {

using Rng = std::mt19937_64;

/// Seed derivation for independent streams (chunks, restarts).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Haar-random unit vector: normalized standard complex Gaussian.
CVector random_unit_vector(Eigen::Index dim, Rng& rng);
/// Real unit vector with standard Gaussian direction.
RVector random_real_unit_vector(Eigen::Index dim, Rng& rng);
/// Uniform point on the probability simplex (symmetric Dirichlet(1)).
RVector random_simplex_point(Eigen::Index m, Rng& rng);
/// Unit vector in the hyperplane orthogonal to (1, ..., 1).
CVector random_hyperplane_vector(Eigen::Index m, Rng& rng);

}  // namespace accinfo
