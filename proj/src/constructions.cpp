#include "contextia/constructions.hpp"

#include "contextia/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace contextia {

namespace {

const double kCos1 = std::cos(std::numbers::pi / 5.0);
const double kSqrtCos1 = std::sqrt(kCos1);
const double kCos2 = std::cos(2.0 * std::numbers::pi / 5.0);
const double kSin2 = std::sin(2.0 * std::numbers::pi / 5.0);
const double kCos4 = std::cos(4.0 * std::numbers::pi / 5.0);
const double kSin4 = std::sin(4.0 * std::numbers::pi / 5.0);
const double kSqrt5 = std::sqrt(5.0);

ComplexVector real_vector(double x, double y, double z)
{
    ComplexVector v(3);
    v << x, y, z;
    return v;
}

ComplexMatrix basis_unit(std::size_t i, std::size_t j)
{
    ComplexMatrix e = ComplexMatrix::Zero(3, 3);
    e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
    return e;
}

ComplexMatrix kron(const ComplexMatrix& A, const ComplexMatrix& B)
{
    ComplexMatrix out(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return out;
}

} // namespace

double cos_pi_5() { return kCos1; }
double sqrt_cos_pi_5() { return kSqrtCos1; }

// ---------------------------------------------------------- PentagonScenario

double cyclic_orthogonality_defect(const std::array<Projection, kPentagonSize>& projections)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < kPentagonSize; ++i) {
        const auto& a = projections[i].matrix();
        const auto& b = projections[(i + 1) % kPentagonSize].matrix();
        worst = std::max(worst, max_abs(a * b));
    }
    return worst;
}

PentagonScenario::PentagonScenario(std::array<Projection, kPentagonSize> projections,
                                   std::optional<DensityState> state, const Tolerances& tol)
    : projections_(std::move(projections)), state_(std::move(state))
{
    const std::size_t n = projections_[0].dim();
    for (const auto& p : projections_)
        if (p.dim() != n) throw ValidationError("PentagonScenario: projections differ in dimension");
    if (state_ && state_->dim() != n) throw ValidationError("PentagonScenario: state dimension does not match");
    const double defect = cyclic_orthogonality_defect(projections_);
    if (defect > tol.projection)
        throw ValidationError("PentagonScenario: adjacent projections are not orthogonal, max |P_i P_{i+1}| = " +
                              std::to_string(defect));
}

ComplexMatrix PentagonScenario::sum() const
{
    ComplexMatrix s = projections_[0].matrix();
    for (std::size_t i = 1; i < kPentagonSize; ++i) s += projections_[i].matrix();
    return s;
}

std::size_t PentagonScenario::rank_sum() const
{
    std::size_t r = 0;
    for (const auto& p : projections_) r += p.rank();
    return r;
}

PentagonScenario PentagonScenario::with_state(DensityState state) const
{
    return PentagonScenario(projections_, std::move(state));
}

double scenario_value(const PentagonScenario& scenario, const Tolerances& tol)
{
    if (!scenario.state()) throw ValidationError("scenario_value: scenario carries no state");
    return state_value(*scenario.state(), scenario.sum(), tol);
}

// ------------------------------------------------------------- KCBS pentagon

KcbsVectors kcbs_vectors()
{
    const double norm = 1.0 / std::sqrt(1.0 + kCos1);
    return KcbsVectors{
        {UnitVector(norm * real_vector(1.0, 0.0, kSqrtCos1)),
         UnitVector(norm * real_vector(kCos4, kSin4, kSqrtCos1)),
         UnitVector(norm * real_vector(kCos2, -kSin2, kSqrtCos1)),
         UnitVector(norm * real_vector(kCos2, kSin2, kSqrtCos1)),
         UnitVector(norm * real_vector(kCos4, -kSin4, kSqrtCos1))},
        UnitVector(real_vector(0.0, 0.0, 1.0)),
    };
}

PentagonScenario kcbs_pentagon(const Tolerances& tol)
{
    const auto v = kcbs_vectors();
    return PentagonScenario(
        {rank1_projection(v.rays[0], tol), rank1_projection(v.rays[1], tol), rank1_projection(v.rays[2], tol),
         rank1_projection(v.rays[3], tol), rank1_projection(v.rays[4], tol)},
        DensityState::pure(v.centre), tol);
}

// ------------------------------------------------------------------ umbrella

UmbrellaFamily umbrella_family(double theta)
{
    if (!(theta > 0.0 && theta < std::numbers::pi / 2.0))
        throw ValidationError("umbrella_family: theta must lie in (0, pi/2)");
    auto ray = [theta](int k) {
        const double phi = 4.0 * std::numbers::pi * k / 5.0;
        return UnitVector::normalized(
            real_vector(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)));
    };
    return UmbrellaFamily{theta, {ray(0), ray(1), ray(2), ray(3), ray(4)}};
}

double umbrella_adjacent_overlap(const UmbrellaFamily& family)
{
    return family.vectors[0].amplitudes().dot(family.vectors[1].amplitudes()).real();
}

double umbrella_centre_value(const UmbrellaFamily& family)
{
    double value = 0.0;
    for (const auto& v : family.vectors) value += std::norm(v[2]);
    return value;
}

double umbrella_critical_angle()
{
    return std::atan(std::sqrt(1.0 / kCos1));
}

// -------------------------------------------------------------- matrix units

MatrixUnitSystem::MatrixUnitSystem(Units units, std::size_t multiplicity, const Tolerances& tol)
    : units_(std::move(units)), multiplicity_(multiplicity)
{
    if (multiplicity_ == 0) throw ValidationError("MatrixUnitSystem: multiplicity must be positive");
    const auto n = static_cast<Eigen::Index>(dim());
    for (const auto& row : units_)
        for (const auto& u : row) {
            if (u.rows() != n || u.cols() != n)
                throw ValidationError("MatrixUnitSystem: unit has wrong shape for dimension " + std::to_string(n));
            require_square_finite(u, "MatrixUnitSystem");
        }

    ComplexMatrix diagonal_sum = ComplexMatrix::Zero(n, n);
    for (std::size_t i = 0; i < kBlockDim; ++i) {
        diagonal_sum += units_[i][i];
        for (std::size_t j = 0; j < kBlockDim; ++j) {
            if (max_abs(units_[i][j].adjoint() - units_[j][i]) > tol.projection)
                throw ValidationError("MatrixUnitSystem: V_" + std::to_string(i) + std::to_string(j) +
                                      "* != V_" + std::to_string(j) + std::to_string(i));
            for (std::size_t k = 0; k < kBlockDim; ++k)
                for (std::size_t l = 0; l < kBlockDim; ++l) {
                    const ComplexMatrix expected =
                        j == k ? units_[i][l] : ComplexMatrix(ComplexMatrix::Zero(n, n));
                    if (max_abs(units_[i][j] * units_[k][l] - expected) > tol.projection)
                        throw ValidationError("MatrixUnitSystem: product rule fails for V_" + std::to_string(i) +
                                              std::to_string(j) + " V_" + std::to_string(k) + std::to_string(l));
                }
        }
    }
    if (max_abs(diagonal_sum - ComplexMatrix::Identity(n, n)) > tol.projection)
        throw ValidationError("MatrixUnitSystem: diagonal units do not sum to the identity");
}

MatrixUnitSystem matrix_units(std::size_t multiplicity)
{
    if (multiplicity == 0) throw ValidationError("matrix_units: multiplicity must be positive");
    if (MatrixUnitSystem::kBlockDim * multiplicity > kMaxConstructionDim)
        throw CapacityError("matrix_units: dimension 3*" + std::to_string(multiplicity) + " exceeds " +
                            std::to_string(kMaxConstructionDim));
    const auto m = static_cast<Eigen::Index>(multiplicity);
    const ComplexMatrix id = ComplexMatrix::Identity(m, m);
    MatrixUnitSystem::Units units;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) units[i][j] = kron(basis_unit(i, j), id);
    return MatrixUnitSystem(std::move(units), multiplicity);
}

PentagonScenario typeiii_projections(const MatrixUnitSystem& V, const Tolerances& tol)
{
    const double scale = 1.0 / (1.0 + kCos1);
    const double c1 = kCos1, sc = kSqrtCos1;
    const double c2 = kCos2, s2 = kSin2, c4 = kCos4, s4 = kSin4;

    const ComplexMatrix R0 = scale * (V(0, 0) + sc * V(0, 2) + sc * V(2, 0) + c1 * V(2, 2));

    const ComplexMatrix R1 =
        scale * (c4 * c4 * V(0, 0) + s4 * c4 * V(0, 1) + c4 * sc * V(0, 2) + s4 * c4 * V(1, 0) + s4 * s4 * V(1, 1) +
                 s4 * sc * V(1, 2) + c4 * sc * V(2, 0) + s4 * sc * V(2, 1) + c1 * V(2, 2));

    const ComplexMatrix R2 =
        scale * (c2 * c2 * V(0, 0) - s2 * c2 * V(0, 1) + c2 * sc * V(0, 2) - s2 * c2 * V(1, 0) + s2 * s2 * V(1, 1) -
                 s2 * sc * V(1, 2) + c2 * sc * V(2, 0) - s2 * sc * V(2, 1) + c1 * V(2, 2));

    const ComplexMatrix R3 =
        scale * (c2 * c2 * V(0, 0) + s2 * c2 * V(0, 1) + c2 * sc * V(0, 2) + s2 * c2 * V(1, 0) + s2 * s2 * V(1, 1) +
                 s2 * sc * V(1, 2) + c2 * sc * V(2, 0) + s2 * sc * V(2, 1) + c1 * V(2, 2));

    const ComplexMatrix R4 =
        scale * (c4 * c4 * V(0, 0) - s4 * c4 * V(0, 1) + c4 * sc * V(0, 2) - s4 * c4 * V(1, 0) + s4 * s4 * V(1, 1) -
                 s4 * sc * V(1, 2) + c4 * sc * V(2, 0) - s4 * sc * V(2, 1) + c1 * V(2, 2));

    return PentagonScenario({Projection(R0, tol), Projection(R1, tol), Projection(R2, tol), Projection(R3, tol),
                             Projection(R4, tol)},
                            std::nullopt, tol);
}

// ------------------------------------------------------ mixture, conjugation

double max_mixture_epsilon()
{
    return kSqrt5 - 2.0;
}

DensityState mixture_state(const UnitVector& phi, const UnitVector& phi_perp, double epsilon, const Tolerances& tol)
{
    if (!(epsilon > 0.0 && epsilon < max_mixture_epsilon()))
        throw ValidationError("mixture_state: epsilon must lie in the open interval (0, sqrt(5) - 2), got " +
                              std::to_string(epsilon));
    if (phi.dim() != phi_perp.dim()) throw ValidationError("mixture_state: vectors differ in dimension");
    const double overlap = std::abs(phi.amplitudes().dot(phi_perp.amplitudes()));
    if (overlap > tol.projection)
        throw ValidationError("mixture_state: components are not orthogonal, |<phi, phi_perp>| = " +
                              std::to_string(overlap));
    const double w = epsilon / kSqrt5;
    const ComplexMatrix rho = (1.0 - w) * phi.amplitudes() * phi.amplitudes().adjoint() +
                              w * phi_perp.amplitudes() * phi_perp.amplitudes().adjoint();
    return DensityState(rho, tol);
}

PentagonScenario conjugate_scenario(const PentagonScenario& s, const ComplexMatrix& U, const Tolerances& tol)
{
    require_square_finite(U, "conjugate_scenario");
    if (static_cast<std::size_t>(U.rows()) != s.dim())
        throw ValidationError("conjugate_scenario: unitary has dimension " + std::to_string(U.rows()) +
                              ", scenario has " + std::to_string(s.dim()));
    if (!is_unitary(U, tol.projection)) throw ValidationError("conjugate_scenario: matrix is not unitary");

    auto conj = [&](const ComplexMatrix& A) -> ComplexMatrix {
        ComplexMatrix B = U.adjoint() * A * U;
        return 0.5 * (B + B.adjoint());
    };
    std::optional<DensityState> state;
    if (s.state()) state.emplace(conj(s.state()->matrix()), tol);
    return PentagonScenario({Projection(conj(s[0].matrix()), tol), Projection(conj(s[1].matrix()), tol),
                             Projection(conj(s[2].matrix()), tol), Projection(conj(s[3].matrix()), tol),
                             Projection(conj(s[4].matrix()), tol)},
                            std::move(state), tol);
}

ComplexMatrix aligning_unitary(const UnitVector& from, const UnitVector& to)
{
    if (from.dim() != to.dim()) throw ValidationError("aligning_unitary: vectors differ in dimension");
    const auto n = static_cast<Eigen::Index>(from.dim());
    const Complex ip = to.amplitudes().dot(from.amplitudes()); // <to, from>
    const Complex phase = std::abs(ip) > 0.0 ? ip / std::abs(ip) : Complex(1.0, 0.0);
    const ComplexVector w = from.amplitudes() - phase * to.amplitudes();
    const double ww = w.squaredNorm();
    ComplexMatrix H = ComplexMatrix::Identity(n, n);
    if (ww > 1e-30) H -= (2.0 / ww) * w * w.adjoint();
    // H from = phase * to
    return std::conj(phase) * H;
}

PentagonScenario align_to_state(const PentagonScenario& scenario, const UnitVector& target, const UnitVector& phi,
                                const Tolerances& tol)
{
    const ComplexMatrix U = aligning_unitary(phi, target);
    const PentagonScenario bare(scenario.projections(), std::nullopt, tol);
    return conjugate_scenario(bare, U, tol).with_state(DensityState::pure(phi));
}

} // namespace contextia
