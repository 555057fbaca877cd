// tracial.hpp: numerical checks that the normalized trace never exceeds the
// classical pentagon bound, step by step through the lattice argument, plus the
// two-dimensional no-violation check.

#pragma once

#include "contextia/constructions.hpp"
#include "contextia/linalg.hpp"
#include "contextia/random.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace contextia {

inline constexpr double kTheoremTolerance = 1e-9;
inline constexpr double kLatticeTolerance = 1e-8;
inline constexpr double kDim2Tolerance = 1e-10;
inline constexpr int kSamplerAttempts = 100;

// τ(A) = Tr(A) / dim on the full matrix algebra.
class TracialState {
public:
    explicit TracialState(std::size_t dim);

    std::size_t dim() const { return dim_; }
    double operator()(const ComplexMatrix& A) const;
    double operator()(const Projection& P) const { return (*this)(P.matrix()); }

private:
    std::size_t dim_;
};

using RankPattern = std::array<std::size_t, kPentagonSize>;

// Ranges drawn from Gaussian vectors: P_{i+1} inside the orthocomplement of P_i
// for i = 0..2, and P_4 inside the orthocomplement of P_3 ∨ P_0. Retries up to
// kSamplerAttempts times on a deterministic per-seed stream, then throws
// ConstructionError naming the failing constraint.
PentagonScenario random_pentagon(std::size_t dim, const RankPattern& ranks, std::uint64_t seed,
                                 const Tolerances& tol = {});

// Rank pattern that respects the adjacent constraints r_i + r_{i+1} <= dim and
// the generic P_4 constraint r_4 <= dim - min(dim, r_0 + r_3).
RankPattern draw_rank_pattern(Rng& rng, std::size_t dim);

// One named relation. For "<=" slack = rhs - lhs; for "==" slack = -|lhs - rhs|.
// A relation holds when slack >= -tolerance.
struct StepCheck {
    std::string name;
    std::string relation;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    double tolerance = 0.0;
    bool holds() const { return slack >= -tolerance; }
};

StepCheck check_leq(std::string name, double lhs, double rhs, double tolerance);
StepCheck check_eq(std::string name, double lhs, double rhs, double tolerance);

// τ(Σ P_i) <= 2 (value also equal to rank sum / dim).
struct Theorem1Report {
    double value = 0.0;
    double rank_value = 0.0;
    StepCheck bound;
    bool holds() const { return bound.holds(); }
};

Theorem1Report verify_theorem1(const PentagonScenario& scenario, const Tolerances& tol = {});

// τ(P) + τ(Q) = τ(P ∨ Q) + τ(P ∧ Q)
StepCheck verify_trace_modularity(const Projection& P, const Projection& Q, const Tolerances& tol = {});

// Every step of the lattice argument, with A = P_0 ∧ (P_0 ∧ P_3)^⊥:
//   p1_p2_bound      τ(P_1) + τ(P_2) <= 1 - τ(P_0 ∧ P_3)
//   p0_split         τ(P_0) = τ(P_0 ∧ P_3) + τ(A)
//   modularity_A_P3  τ(A) + τ(P_3) = τ(A ∨ P_3) + τ(A ∧ P_3)
//   meet_A_P3_zero   τ(A ∧ P_3) = 0
//   A_P3_below_join  τ(A) + τ(P_3) <= τ(P_0 ∨ P_3)
//   sum_chain        Σ τ(P_i) <= 1 + τ(P_0 ∨ P_3) + τ(P_4)
//   join_P4_bound    τ(P_0 ∨ P_3) + τ(P_4) <= 1
struct ProofChainReport {
    std::vector<StepCheck> steps;
    bool holds() const;
    const StepCheck& step(const std::string& name) const;
    double min_slack() const;
};

ProofChainReport verify_proof_chain(const PentagonScenario& scenario, const Tolerances& tol = {});

struct Dim2Report {
    int trials = 0;
    int feasible = 0;
    int with_zero_projection = 0;
    int saturating = 0; // families whose sum has top eigenvalue 2
    std::size_t max_rank_sum = 0;
    double max_eigenvalue = 0.0;
    double max_grid_value = 0.0;
    bool holds() const;
};

// Random rank patterns in dimension 2 through the sampler; for each feasible
// family checks rank sum <= 4, a zero member, top eigenvalue of the sum <= 2
// and the values of 200 pure states on a Fibonacci Bloch-sphere grid.
Dim2Report verify_dim2_no_violation(int trials, std::uint64_t seed, const Tolerances& tol = {});

// Pair of projections sharing a random common subspace, so their meet is
// generically nonzero.
std::pair<Projection, Projection> random_projection_pair(std::size_t dim, std::uint64_t seed,
                                                         const Tolerances& tol = {});

// ---------------------------------------------------------------- campaigns

struct ScenarioRecord {
    std::size_t dim = 0;
    std::uint64_t seed = 0;
    RankPattern ranks{};
    Theorem1Report theorem1;
    ProofChainReport chain;
    bool holds() const { return theorem1.holds() && chain.holds(); }
};

// Scenario for one campaign seed: rank pattern and ranges both derive from it.
// Returns nullopt when the sampler reports the pattern infeasible.
std::optional<ScenarioRecord> run_scenario(std::size_t dim, std::uint64_t seed, const Tolerances& tol = {});

struct CampaignSummary {
    std::size_t dim = 0;
    int scenarios = 0;
    int infeasible = 0;
    int failures = 0;
    double max_value = 0.0;
    double min_theorem1_slack = 0.0;
    double min_chain_slack = 0.0;
    std::optional<std::uint64_t> first_failure_seed;
};

// Walks seeds base, base+1, ... until `count` feasible scenarios were checked.
CampaignSummary run_tracial_campaign(std::size_t dim, int count, std::uint64_t base_seed, const Tolerances& tol = {},
                                     const std::function<void(const ScenarioRecord&)>& on_record = {});

struct ModularitySummary {
    std::size_t dim = 0;
    int pairs = 0;
    int failures = 0;
    int nonzero_meets = 0;
    double max_residual = 0.0;
    std::optional<std::uint64_t> first_failure_seed;
};

ModularitySummary run_modularity_campaign(std::size_t dim, int count, std::uint64_t base_seed,
                                          const Tolerances& tol = {});

} // namespace contextia
