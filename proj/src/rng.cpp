#include "embens/rng.hpp"

#include <cmath>
#include <numbers>

#include "embens/errors.hpp"

namespace embens {

std::uint64_t Rng::uniform_below(std::uint64_t n) {
    if (n == 0) throw data_error("uniform_below: n must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return x % n;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // u1 in (0,1] so the log is finite.
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Matrix gaussian_matrix(Rng& rng, Index r, Index c) {
    Matrix m(r, c);
    for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < c; ++j)
            m(i, j) = rng.normal();
    return m;
}

Matrix random_orthogonal(Rng& rng, Index n) {
    Matrix a = gaussian_matrix(rng, n, n);
    Matrix q(n, n);
    // Modified Gram-Schmidt over columns, with a second projection pass.
    for (Index j = 0; j < n; ++j) {
        std::vector<double> v(static_cast<std::size_t>(n));
        for (Index i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a(i, j);
        for (int pass = 0; pass < 2; ++pass) {
            for (Index k = 0; k < j; ++k) {
                double proj = 0.0;
                for (Index i = 0; i < n; ++i) proj += q(i, k) * v[static_cast<std::size_t>(i)];
                for (Index i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] -= proj * q(i, k);
            }
        }
        double nv = 0.0;
        for (double x : v) nv += x * x;
        nv = std::sqrt(nv);
        while (nv < 1e-12) {
            // Degenerate draw; replace the column and redo the projections.
            for (Index i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = rng.normal();
            for (Index k = 0; k < j; ++k) {
                double proj = 0.0;
                for (Index i = 0; i < n; ++i) proj += q(i, k) * v[static_cast<std::size_t>(i)];
                for (Index i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] -= proj * q(i, k);
            }
            nv = 0.0;
            for (double x : v) nv += x * x;
            nv = std::sqrt(nv);
        }
        for (Index i = 0; i < n; ++i) q(i, j) = v[static_cast<std::size_t>(i)] / nv;
    }
    return q;
}

} // namespace embens
