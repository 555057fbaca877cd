// constructions.hpp: explicit pentagon scenarios.
//
// * the five-vector pentagon in C^3 whose centre state reaches √5;
// * the umbrella family it belongs to, parametrised by the polar angle;
// * a finite stand-in for the matrix-unit construction: 3x3 blocks with
//   multiplicity m (V_ij = e_ij ⊗ I_m), the five projections written as
//   linear combinations of matrix units, the two-component mixture state and
//   unitary conjugation of a whole scenario.
//
// Only the value bound of the mixture state is checked. In finite dimension a
// two-term mixture is not faithful once the space has dimension above 2, and
// aligning several states with one unitary is not attempted; a single pure
// state is aligned by an explicit unitary instead.

#pragma once

#include "contextia/linalg.hpp"

#include <array>
#include <optional>
#include <string>

namespace contextia {

inline constexpr std::size_t kPentagonSize = 5;
inline constexpr std::size_t kMaxConstructionDim = 100;

// Classical (noncontextual) bound for the pentagon.
inline constexpr double kPentagonClassicalBound = 2.0;

// cos(π/5) and its square root, evaluated once.
double cos_pi_5();
double sqrt_cos_pi_5();

// Five projections with P_i P_{i+1 mod 5} = 0, optionally with a state.
class PentagonScenario {
public:
    PentagonScenario(std::array<Projection, kPentagonSize> projections, std::optional<DensityState> state = {},
                     const Tolerances& tol = {});

    std::size_t dim() const { return projections_[0].dim(); }
    const std::array<Projection, kPentagonSize>& projections() const { return projections_; }
    const Projection& operator[](std::size_t i) const { return projections_.at(i); }
    const std::optional<DensityState>& state() const { return state_; }

    // Sum of the five projections.
    ComplexMatrix sum() const;
    std::size_t rank_sum() const;

    PentagonScenario with_state(DensityState state) const;

private:
    std::array<Projection, kPentagonSize> projections_;
    std::optional<DensityState> state_;
};

// Largest |(P_i P_{i+1})_{jk}| over the cycle.
double cyclic_orthogonality_defect(const std::array<Projection, kPentagonSize>& projections);

// State value of the pentagon sum; throws ValidationError when there is no state.
double scenario_value(const PentagonScenario& scenario, const Tolerances& tol = {});

struct KcbsVectors {
    std::array<UnitVector, kPentagonSize> rays;
    UnitVector centre; // (0, 0, 1)
};

KcbsVectors kcbs_vectors();

// Rank-1 projections onto the five rays, with the pure centre state.
PentagonScenario kcbs_pentagon(const Tolerances& tol = {});

struct UmbrellaFamily {
    double theta = 0.0;
    std::array<UnitVector, kPentagonSize> vectors;
};

// Unit vectors at polar angle theta and azimuths 4πk/5, k = 0..4.
UmbrellaFamily umbrella_family(double theta);

// <v_k, v_{k+1}> (real, identical for every k).
double umbrella_adjacent_overlap(const UmbrellaFamily& family);

// <e_z, (sum_k |v_k><v_k|) e_z>.
double umbrella_centre_value(const UmbrellaFamily& family);

// arctan(sqrt(1 / cos(π/5))), where adjacent vectors become orthogonal.
double umbrella_critical_angle();

// Matrix units V_ij (i, j in 0..2) on C^3 ⊗ C^m.
class MatrixUnitSystem {
public:
    static constexpr std::size_t kBlockDim = 3;
    using Units = std::array<std::array<ComplexMatrix, kBlockDim>, kBlockDim>;

    // Checks V_ij V_kl = δ_jk V_il, V_ij* = V_ji and Σ_i V_ii = I.
    MatrixUnitSystem(Units units, std::size_t multiplicity, const Tolerances& tol = {});

    std::size_t multiplicity() const { return multiplicity_; }
    std::size_t dim() const { return kBlockDim * multiplicity_; }
    const ComplexMatrix& operator()(std::size_t i, std::size_t j) const { return units_.at(i).at(j); }

private:
    Units units_;
    std::size_t multiplicity_;
};

// V_ij = e_ij ⊗ I_m. CapacityError when 3m exceeds kMaxConstructionDim.
MatrixUnitSystem matrix_units(std::size_t multiplicity);

// The five projections expressed through the matrix units; each has rank m.
PentagonScenario typeiii_projections(const MatrixUnitSystem& units, const Tolerances& tol = {});

// Open interval (0, √5 - 2) for the mixture weight parameter.
double max_mixture_epsilon();

// (1 - ε/√5)|Φ><Φ| + (ε/√5)|Φ⊥><Φ⊥|
DensityState mixture_state(const UnitVector& phi, const UnitVector& phi_perp, double epsilon,
                           const Tolerances& tol = {});

// P_i -> U* P_i U; a state ρ maps to U* ρ U.
PentagonScenario conjugate_scenario(const PentagonScenario& scenario, const ComplexMatrix& U,
                                    const Tolerances& tol = {});

// A unitary U with U·from = to (phase-corrected Householder reflection).
ComplexMatrix aligning_unitary(const UnitVector& from, const UnitVector& to);

// Conjugates the scenario by the unitary sending phi to target and attaches the
// pure state phi, so phi sees the conjugated projections the way target sees
// the original ones.
PentagonScenario align_to_state(const PentagonScenario& scenario, const UnitVector& target, const UnitVector& phi,
                                const Tolerances& tol = {});

} // namespace contextia
