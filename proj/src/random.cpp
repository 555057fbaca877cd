#include "contextia/random.hpp"

#include "contextia/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace contextia {

double Rng::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal()
{
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
}

double Rng::exponential()
{
    return -std::log(1.0 - uniform());
}

std::uint64_t Rng::uniform_int(std::uint64_t lo, std::uint64_t hi)
{
    if (hi < lo) throw ValidationError("Rng::uniform_int: empty range");
    const std::uint64_t span = hi - lo;
    if (span == UINT64_MAX) return engine_();
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return lo + x % range;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream)
{
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

ComplexVector gaussian_vector(Rng& rng, std::size_t dim)
{
    ComplexVector v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = rng.normal();
        const double im = rng.normal();
        v(i) = Complex(re, im) * std::sqrt(0.5);
    }
    return v;
}

ComplexMatrix gaussian_matrix(Rng& rng, std::size_t rows, std::size_t cols)
{
    ComplexMatrix M(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index j = 0; j < M.cols(); ++j) M.col(j) = gaussian_vector(rng, rows);
    return M;
}

UnitVector random_unit_vector(Rng& rng, std::size_t dim)
{
    return UnitVector::normalized(gaussian_vector(rng, dim));
}

ComplexMatrix random_unitary(Rng& rng, std::size_t dim)
{
    if (dim == 0) throw ValidationError("random_unitary: dim must be positive");
    for (;;) {
        ComplexMatrix Q = orthonormal_columns(gaussian_matrix(rng, dim, dim));
        if (static_cast<std::size_t>(Q.cols()) == dim) return Q;
    }
}

ComplexMatrix random_subspace(Rng& rng, const Projection& within, std::size_t rank)
{
    if (rank > within.rank())
        throw ConstructionError("random_subspace: rank " + std::to_string(rank) + " exceeds available dimension " +
                                std::to_string(within.rank()));
    const auto n = static_cast<Eigen::Index>(within.dim());
    if (rank == 0) return ComplexMatrix(n, 0);
    const ComplexMatrix basis = within.range_basis();
    for (;;) {
        const ComplexMatrix coeffs = gaussian_matrix(rng, within.rank(), rank);
        ComplexMatrix Q = orthonormal_columns(basis * coeffs);
        if (static_cast<std::size_t>(Q.cols()) == rank) return Q;
    }
}

} // namespace contextia
