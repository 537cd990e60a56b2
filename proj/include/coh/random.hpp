#pragma once

#include "coh/linalg.hpp"
#include "coh/m3.hpp"

#include <cstdint>
#include <random>

namespace coh {

/// splitmix64 of seed ^ index; derives independent per-instance seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform triple in [-1,1]^3, rejection-sampled to PSD validity.
M3Triple random_valid_triple(std::mt19937_64& rng, int n_qubits);

/// Freezing-family triple (c1, (-1)^(N/2) c1 c3, c3), PSD valid; even N.
M3Triple random_freezing_triple(std::mt19937_64& rng, int n_qubits);

/// Full-rank random state from the Ginibre ensemble, rho = GG^dag / Tr.
DensityMatrix random_density(std::mt19937_64& rng, int dim);

/// Uniform point in the Bloch ball.
BlochVector random_bloch(std::mt19937_64& rng);

/// Dirichlet(1,...,1) probability vector.
RVec random_simplex(std::mt19937_64& rng, int dim);

}  // namespace coh
