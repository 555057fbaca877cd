#include "doctest.h"

#include "contextia/constructions.hpp"
#include "contextia/errors.hpp"
#include "contextia/random.hpp"

#include <cmath>
#include <numbers>

using namespace contextia;

namespace {

const double kSqrt5 = std::sqrt(5.0);

ComplexMatrix tensor_identity(const ComplexMatrix& A, std::size_t m)
{
    const auto k = static_cast<Eigen::Index>(m);
    ComplexMatrix out = ComplexMatrix::Zero(A.rows() * k, A.cols() * k);
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            for (Eigen::Index r = 0; r < k; ++r) out(i * k + r, j * k + r) = A(i, j);
    return out;
}

UnitVector basis(std::size_t dim, std::size_t i)
{
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(i)) = 1.0;
    return UnitVector(v);
}

// Random unit vector supported on indices [2m, 3m).
UnitVector random_in_last_block(Rng& rng, std::size_t m)
{
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(3 * m));
    v.segment(static_cast<Eigen::Index>(2 * m), static_cast<Eigen::Index>(m)) = gaussian_vector(rng, m);
    return UnitVector::normalized(v);
}

} // namespace

TEST_SUITE("pentagon vectors")
{
    TEST_CASE("unit norm, adjacent orthogonality, overlap with the centre")
    {
        const auto v = kcbs_vectors();
        for (std::size_t i = 0; i < kPentagonSize; ++i) {
            const auto& a = v.rays[i].amplitudes();
            const auto& b = v.rays[(i + 1) % kPentagonSize].amplitudes();
            CHECK(std::abs(a.norm() - 1.0) <= 1e-15);
            CHECK(std::abs(a.dot(b)) <= 1e-14);
            CHECK(std::abs(std::norm(a.dot(v.centre.amplitudes())) - 1.0 / kSqrt5) <= 1e-14);
        }
        // non-adjacent pairs overlap
        CHECK(std::abs(v.rays[0].amplitudes().dot(v.rays[2].amplitudes())) > 0.1);
    }

    TEST_CASE("pentagon value")
    {
        const auto s = kcbs_pentagon();
        CHECK(std::abs(scenario_value(s) - 2.2360679774997896) <= 1e-12);
        CHECK(s.rank_sum() == 5);
        CHECK(cyclic_orthogonality_defect(s.projections()) <= 1e-14);
    }

    TEST_CASE("scenario validation")
    {
        const auto s = kcbs_pentagon();
        auto ps = s.projections();
        ps[1] = ps[2];
        CHECK_THROWS_AS(PentagonScenario{ps}, ValidationError);
        auto mixed_dims = s.projections();
        mixed_dims[4] = Projection::zero(4);
        CHECK_THROWS_AS(PentagonScenario{mixed_dims}, ValidationError);
        CHECK_THROWS_AS(scenario_value(PentagonScenario(s.projections())), ValidationError);
    }
}

TEST_SUITE("umbrella family")
{
    TEST_CASE("overlap at pi/4")
    {
        const auto f = umbrella_family(std::numbers::pi / 4.0);
        // 1/2 cos(4pi/5) + 1/2
        CHECK(std::abs(umbrella_adjacent_overlap(f) - 0.09549150281252633) <= 1e-14);
        CHECK(std::abs(umbrella_centre_value(f) - 2.5) <= 1e-14);
    }

    TEST_CASE("critical angle by bisection")
    {
        double lo = 0.1, hi = 1.5;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (umbrella_adjacent_overlap(umbrella_family(mid)) > 0.0)
                lo = mid;
            else
                hi = mid;
        }
        CHECK(std::abs(0.5 * (lo + hi) - umbrella_critical_angle()) <= 1e-12);
        CHECK(std::abs(umbrella_critical_angle() - 0.8382831191721175) <= 1e-12);

        const auto f = umbrella_family(umbrella_critical_angle());
        CHECK(std::abs(umbrella_centre_value(f) - kSqrt5) <= 1e-12);
        for (std::size_t k = 0; k < kPentagonSize; ++k) {
            const auto& a = f.vectors[k].amplitudes();
            for (std::size_t d = 0; d < 3; ++d) CHECK(std::abs(a(static_cast<Eigen::Index>(d)) - kcbs_vectors().rays[k][d]) <= 1e-12);
        }
    }

    TEST_CASE("domain")
    {
        CHECK_THROWS_AS(umbrella_family(0.0), ValidationError);
        CHECK_THROWS_AS(umbrella_family(std::numbers::pi / 2.0), ValidationError);
    }
}

TEST_SUITE("matrix units")
{
    TEST_CASE("invariants and capacity")
    {
        for (std::size_t m : {1, 2, 4}) {
            const auto V = matrix_units(m);
            CHECK(V.dim() == 3 * m);
            CHECK(Projection(V(1, 1)).rank() == m);
        }
        CHECK_THROWS_AS(matrix_units(34), CapacityError);
        CHECK_NOTHROW(matrix_units(33));
        CHECK_THROWS_AS(matrix_units(0), ValidationError);

        auto units = matrix_units(2);
        MatrixUnitSystem::Units broken;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) broken[i][j] = units(i, j);
        broken[0][1] = 2.0 * broken[0][1];
        CHECK_THROWS_AS(MatrixUnitSystem(broken, 2), ValidationError);
    }

    TEST_CASE("projections match the tensor form")
    {
        const auto rays = kcbs_vectors().rays;
        for (std::size_t m : {1, 2, 4}) {
            const auto s = typeiii_projections(matrix_units(m));
            for (std::size_t i = 0; i < kPentagonSize; ++i) {
                const ComplexMatrix oracle =
                    tensor_identity(rays[i].amplitudes() * rays[i].amplitudes().adjoint(), m);
                CHECK(max_abs(s[i].matrix() - oracle) <= 1e-13);
                CHECK(s[i].rank() == m);
            }
            CHECK(cyclic_orthogonality_defect(s.projections()) <= 1e-13);
        }
    }

    TEST_CASE("any unit vector in the last block reaches sqrt 5")
    {
        Rng rng(11);
        for (std::size_t m : {1, 2, 4}) {
            const auto s = typeiii_projections(matrix_units(m));
            for (int k = 0; k < 100; ++k) {
                const auto phi = random_in_last_block(rng, m);
                CHECK(std::abs(scenario_value(s.with_state(DensityState::pure(phi))) - kSqrt5) <= 1e-11);
            }
        }
    }
}

TEST_SUITE("mixture")
{
    TEST_CASE("value stays within epsilon of sqrt 5 and is affine in epsilon")
    {
        const std::size_t m = 2;
        const auto s = typeiii_projections(matrix_units(m));
        const auto phi = basis(3 * m, 2 * m);
        const auto perp = basis(3 * m, 0);
        // <e_0, sum R e_0> = (1 + 2 cos^2(4pi/5) + 2 cos^2(2pi/5)) / (1 + cos(pi/5))
        const double perp_value = 2.5 / (1.0 + cos_pi_5());
        for (double eps : {0.01, 0.05, 0.1, 0.2}) {
            const double v = scenario_value(s.with_state(mixture_state(phi, perp, eps)));
            CHECK(v >= kSqrt5 - eps - 1e-12);
            CHECK(v > 2.0);
            CHECK(std::abs(v - ((1.0 - eps / kSqrt5) * kSqrt5 + eps / kSqrt5 * perp_value)) <= 1e-12);
        }
    }

    TEST_CASE("rejections")
    {
        const auto phi = basis(3, 2);
        const auto perp = basis(3, 0);
        CHECK_THROWS_AS(mixture_state(phi, perp, 0.0), ValidationError);
        CHECK_THROWS_AS(mixture_state(phi, perp, max_mixture_epsilon()), ValidationError);
        CHECK_THROWS_AS(mixture_state(phi, perp, -0.1), ValidationError);
        CHECK_THROWS_AS(mixture_state(phi, phi, 0.1), ValidationError);
        CHECK_THROWS_AS(mixture_state(phi, basis(4, 0), 0.1), ValidationError);
        CHECK(std::abs(max_mixture_epsilon() - 0.2360679774997898) <= 1e-15);
    }
}

TEST_SUITE("conjugation")
{
    TEST_CASE("values and spectra are invariant")
    {
        Rng rng(3);
        for (std::size_t m : {1, 2, 4}) {
            const auto V = matrix_units(m);
            const auto s = typeiii_projections(V).with_state(
                mixture_state(basis(3 * m, 2 * m), basis(3 * m, 0), 0.1));
            const ComplexMatrix U = random_unitary(rng, 3 * m);
            const auto c = conjugate_scenario(s, U);
            CHECK(std::abs(scenario_value(c) - scenario_value(s)) <= 1e-10);
            const auto before = hermitian_eigen(s.sum()).eigenvalues;
            const auto after = hermitian_eigen(c.sum()).eigenvalues;
            for (std::size_t k = 0; k < before.size(); ++k) CHECK(std::abs(before[k] - after[k]) <= 1e-10);
            for (std::size_t i = 0; i < kPentagonSize; ++i) CHECK(c[i].rank() == m);
        }
        ComplexMatrix notU = ComplexMatrix::Identity(3, 3) * 2.0;
        CHECK_THROWS_AS(conjugate_scenario(kcbs_pentagon(), notU), ValidationError);
        CHECK_THROWS_AS(conjugate_scenario(kcbs_pentagon(), ComplexMatrix::Identity(4, 4)), ValidationError);
    }

    TEST_CASE("aligning a chosen state")
    {
        Rng rng(17);
        for (int k = 0; k < 50; ++k) {
            const std::size_t m = 1 + static_cast<std::size_t>(k % 4);
            const auto s = typeiii_projections(matrix_units(m));
            const auto from = random_unit_vector(rng, 3 * m);
            const auto to = random_in_last_block(rng, m);
            const ComplexMatrix U = aligning_unitary(from, to);
            CHECK(is_unitary(U, 1e-12));
            CHECK((U * from.amplitudes() - to.amplitudes()).norm() <= 1e-12);
            CHECK(std::abs(scenario_value(align_to_state(s, to, from)) - kSqrt5) <= 1e-10);
        }
        // identical vectors give the identity
        const auto e = basis(3, 1);
        CHECK(max_abs(aligning_unitary(e, e) - ComplexMatrix::Identity(3, 3)) <= 1e-15);
    }
}
