#ifndef EMBENS_RNG_HPP
#define EMBENS_RNG_HPP

#include <cstdint>
#include <random>

#include "embens/matrix.hpp"

namespace embens {

// Deterministic random source. std::mt19937_64 has a fully specified
// sequence; the uniform and Gaussian transforms below are our own, so a
// given seed reproduces the same stream on every platform and release.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform double in [0, 1) with 53 bits of precision.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Unbiased uniform integer in [0, n).
    std::uint64_t uniform_below(std::uint64_t n);

    // Standard normal via Box-Muller.
    double normal();

private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Mixes a run seed with a stream id so per-stream generators are
// independent and reproducible (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// r x c matrix of i.i.d. standard normals.
Matrix gaussian_matrix(Rng& rng, Index r, Index c);

// Random n x n orthogonal matrix: Gram-Schmidt on a Gaussian matrix with a
// re-orthogonalization pass.
Matrix random_orthogonal(Rng& rng, Index n);

} // namespace embens

#endif
