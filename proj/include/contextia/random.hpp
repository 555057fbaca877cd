// random.hpp: seed-reproducible sampling.
//
// Bits come from std::mt19937_64, whose output sequence is fixed by the
// standard. The standard <random> distributions are implementation-defined,
// so the mappings to uniform / normal / exponential variates live here to
// keep seeded runs identical across platforms.

#pragma once

#include "contextia/linalg.hpp"

#include <cstdint>
#include <random>

namespace contextia {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }
    double uniform();                                   // [0, 1)
    double normal();                                    // N(0, 1), Box-Muller
    double exponential();                               // Exp(1)
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi); // inclusive

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Mixes (seed, stream) into an independent child seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Complex Gaussian vector / matrix with i.i.d. N(0, 1/2) real and imaginary parts.
ComplexVector gaussian_vector(Rng& rng, std::size_t dim);
ComplexMatrix gaussian_matrix(Rng& rng, std::size_t rows, std::size_t cols);

// Haar-like random unit vector and unitary (Gram-Schmidt of Gaussian columns).
UnitVector random_unit_vector(Rng& rng, std::size_t dim);
ComplexMatrix random_unitary(Rng& rng, std::size_t dim);

// Orthonormal basis of a random `rank`-dimensional subspace of range(within).
ComplexMatrix random_subspace(Rng& rng, const Projection& within, std::size_t rank);

} // namespace contextia
