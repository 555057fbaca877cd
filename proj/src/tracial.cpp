#include "contextia/tracial.hpp"

#include "contextia/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace contextia {

namespace {

constexpr int kBlochGridPoints = 200;

std::string pattern_string(const RankPattern& r)
{
    std::string s = "(";
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
    return s + ")";
}

// Fibonacci lattice on the Bloch sphere.
std::vector<UnitVector> bloch_grid(int points)
{
    std::vector<UnitVector> out;
    out.reserve(static_cast<std::size_t>(points));
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < points; ++k) {
        const double z = 1.0 - 2.0 * (k + 0.5) / points;
        const double polar = std::acos(z);
        const double azimuth = golden * k;
        ComplexVector v(2);
        v << std::cos(polar / 2.0), std::polar(std::sin(polar / 2.0), azimuth);
        out.push_back(UnitVector::normalized(v));
    }
    return out;
}

} // namespace

TracialState::TracialState(std::size_t dim)
    : dim_(dim)
{
    if (dim == 0) throw ValidationError("TracialState: dim must be positive");
}

double TracialState::operator()(const ComplexMatrix& A) const
{
    if (static_cast<std::size_t>(A.rows()) != dim_ || A.rows() != A.cols())
        throw ValidationError("TracialState: operator dimension does not match");
    return A.trace().real() / static_cast<double>(dim_);
}

PentagonScenario random_pentagon(std::size_t dim, const RankPattern& ranks, std::uint64_t seed, const Tolerances& tol)
{
    if (dim == 0 || dim > kMaxConstructionDim)
        throw ValidationError("random_pentagon: dim must be in [1, " + std::to_string(kMaxConstructionDim) + "]");
    for (std::size_t i = 0; i < kPentagonSize; ++i) {
        if (ranks[i] > dim)
            throw ConstructionError("random_pentagon: rank(P_" + std::to_string(i) + ") = " +
                                    std::to_string(ranks[i]) + " exceeds dim " + std::to_string(dim));
        const std::size_t j = (i + 1) % kPentagonSize;
        if (ranks[i] + ranks[j] > dim)
            throw ConstructionError("random_pentagon: rank(P_" + std::to_string(i) + ") + rank(P_" +
                                    std::to_string(j) + ") = " + std::to_string(ranks[i] + ranks[j]) +
                                    " exceeds dim " + std::to_string(dim) + " but P_" + std::to_string(i) + " P_" +
                                    std::to_string(j) + " = 0 is required");
    }

    std::size_t last_join_rank = 0;
    for (int attempt = 0; attempt < kSamplerAttempts; ++attempt) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
        const Projection full = Projection::identity(dim);
        const Projection p0 = projection_onto(random_subspace(rng, full, ranks[0]), tol);
        const Projection p1 = projection_onto(random_subspace(rng, p0.complement(), ranks[1]), tol);
        const Projection p2 = projection_onto(random_subspace(rng, p1.complement(), ranks[2]), tol);
        const Projection p3 = projection_onto(random_subspace(rng, p2.complement(), ranks[3]), tol);
        const Projection join = projection_join(p0, p3, tol);
        last_join_rank = join.rank();
        if (ranks[4] > dim - join.rank()) continue;
        const Projection p4 = projection_onto(random_subspace(rng, join.complement(), ranks[4]), tol);
        return PentagonScenario({p0, p1, p2, p3, p4}, std::nullopt, tol);
    }
    throw ConstructionError("random_pentagon: ranks " + pattern_string(ranks) + " infeasible in dim " +
                            std::to_string(dim) + " after " + std::to_string(kSamplerAttempts) +
                            " attempts: rank(P_4) = " + std::to_string(ranks[4]) +
                            " exceeds dim - rank(P_0 v P_3) = " + std::to_string(dim - last_join_rank));
}

RankPattern draw_rank_pattern(Rng& rng, std::size_t dim)
{
    RankPattern r{};
    r[0] = rng.uniform_int(0, dim);
    for (std::size_t i = 1; i < 4; ++i) r[i] = rng.uniform_int(0, dim - r[i - 1]);
    const std::size_t joined = std::min(dim, r[0] + r[3]);
    r[4] = rng.uniform_int(0, dim - joined);
    return r;
}

StepCheck check_leq(std::string name, double lhs, double rhs, double tolerance)
{
    return StepCheck{std::move(name), "<=", lhs, rhs, rhs - lhs, tolerance};
}

StepCheck check_eq(std::string name, double lhs, double rhs, double tolerance)
{
    return StepCheck{std::move(name), "==", lhs, rhs, -std::abs(lhs - rhs), tolerance};
}

Theorem1Report verify_theorem1(const PentagonScenario& s, const Tolerances&)
{
    const TracialState tau(s.dim());
    Theorem1Report report;
    report.value = tau(s.sum());
    report.rank_value = static_cast<double>(s.rank_sum()) / static_cast<double>(s.dim());
    report.bound = check_leq("theorem1", report.value, kPentagonClassicalBound, kTheoremTolerance);
    return report;
}

StepCheck verify_trace_modularity(const Projection& P, const Projection& Q, const Tolerances& tol)
{
    if (P.dim() != Q.dim()) throw ValidationError("verify_trace_modularity: dimension mismatch");
    const TracialState tau(P.dim());
    const double lhs = tau(P) + tau(Q);
    const double rhs = tau(projection_join(P, Q, tol)) + tau(projection_meet(P, Q, tol));
    return check_eq("trace_modularity", lhs, rhs, kLatticeTolerance);
}

bool ProofChainReport::holds() const
{
    return std::all_of(steps.begin(), steps.end(), [](const StepCheck& s) { return s.holds(); });
}

const StepCheck& ProofChainReport::step(const std::string& name) const
{
    for (const auto& s : steps)
        if (s.name == name) return s;
    throw ValidationError("ProofChainReport: no step named " + name);
}

double ProofChainReport::min_slack() const
{
    double m = 0.0;
    for (std::size_t i = 0; i < steps.size(); ++i) m = i == 0 ? steps[i].slack : std::min(m, steps[i].slack);
    return m;
}

ProofChainReport verify_proof_chain(const PentagonScenario& s, const Tolerances& tol)
{
    const TracialState tau(s.dim());
    const Projection& p0 = s[0];
    const Projection& p3 = s[3];

    const Projection meet03 = projection_meet(p0, p3, tol);
    const Projection join03 = projection_join(p0, p3, tol);
    const Projection a = projection_meet(p0, meet03.complement(), tol);
    const Projection a_meet_p3 = projection_meet(a, p3, tol);
    const Projection a_join_p3 = projection_join(a, p3, tol);

    double total = 0.0;
    for (const auto& p : s.projections()) total += tau(p);

    ProofChainReport r;
    r.steps.push_back(check_leq("p1_p2_bound", tau(s[1]) + tau(s[2]), 1.0 - tau(meet03), kLatticeTolerance));
    r.steps.push_back(check_eq("p0_split", tau(p0), tau(meet03) + tau(a), kLatticeTolerance));
    r.steps.push_back(
        check_eq("modularity_A_P3", tau(a) + tau(p3), tau(a_join_p3) + tau(a_meet_p3), kLatticeTolerance));
    r.steps.push_back(check_eq("meet_A_P3_zero", tau(a_meet_p3), 0.0, kLatticeTolerance));
    r.steps.push_back(check_leq("A_P3_below_join", tau(a) + tau(p3), tau(join03), kLatticeTolerance));
    r.steps.push_back(check_leq("sum_chain", total, 1.0 + tau(join03) + tau(s[4]), kLatticeTolerance));
    r.steps.push_back(check_leq("join_P4_bound", tau(join03) + tau(s[4]), 1.0, kLatticeTolerance));
    return r;
}

bool Dim2Report::holds() const
{
    return feasible == with_zero_projection && max_rank_sum <= 4 &&
           max_eigenvalue <= kPentagonClassicalBound + kDim2Tolerance &&
           max_grid_value <= kPentagonClassicalBound + kDim2Tolerance;
}

Dim2Report verify_dim2_no_violation(int trials, std::uint64_t seed, const Tolerances& tol)
{
    if (trials < 1) throw ValidationError("verify_dim2_no_violation: trials must be at least 1");
    const auto grid = bloch_grid(kBlochGridPoints);
    Dim2Report report;
    report.trials = trials;
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = derive_seed(seed, static_cast<std::uint64_t>(t));
        Rng rng(trial_seed);
        RankPattern ranks{};
        ranks[0] = rng.uniform_int(0, 2);
        for (std::size_t i = 1; i < 4; ++i) ranks[i] = rng.uniform_int(0, 2 - ranks[i - 1]);
        ranks[4] = rng.uniform_int(0, 2 - std::max(ranks[0], ranks[3]));

        std::optional<PentagonScenario> s;
        try {
            s.emplace(random_pentagon(2, ranks, derive_seed(trial_seed, 1), tol));
        } catch (const ConstructionError&) {
            continue;
        }
        ++report.feasible;
        report.max_rank_sum = std::max(report.max_rank_sum, s->rank_sum());
        if (std::any_of(s->projections().begin(), s->projections().end(),
                        [](const Projection& p) { return p.rank() == 0; }))
            ++report.with_zero_projection;

        const ComplexMatrix sum = s->sum();
        const double top = hermitian_eigen(sum, tol).eigenvalues.back();
        report.max_eigenvalue = std::max(report.max_eigenvalue, top);
        if (std::abs(top - kPentagonClassicalBound) <= kDim2Tolerance) ++report.saturating;
        for (const auto& v : grid) {
            const double value = (v.amplitudes().adjoint() * sum * v.amplitudes())(0, 0).real();
            report.max_grid_value = std::max(report.max_grid_value, value);
        }
    }
    return report;
}

std::pair<Projection, Projection> random_projection_pair(std::size_t dim, std::uint64_t seed, const Tolerances& tol)
{
    if (dim == 0) throw ValidationError("random_projection_pair: dim must be positive");
    Rng rng(seed);
    const std::size_t common = rng.uniform_int(0, dim);
    const std::size_t extra_p = rng.uniform_int(0, dim - common);
    const std::size_t extra_q = rng.uniform_int(0, dim - common);

    const ComplexMatrix C = random_subspace(rng, Projection::identity(dim), common);
    const Projection shared = projection_onto(C, tol);
    const Projection rest = shared.complement();
    auto build = [&](std::size_t extra) {
        const ComplexMatrix E = random_subspace(rng, rest, extra);
        ComplexMatrix basis(static_cast<Eigen::Index>(dim), C.cols() + E.cols());
        basis << C, E;
        return projection_onto(basis, tol);
    };
    Projection P = build(extra_p);
    Projection Q = build(extra_q);
    return {std::move(P), std::move(Q)};
}

// ---------------------------------------------------------------- campaigns

std::optional<ScenarioRecord> run_scenario(std::size_t dim, std::uint64_t seed, const Tolerances& tol)
{
    Rng rng(seed);
    ScenarioRecord rec;
    rec.dim = dim;
    rec.seed = seed;
    rec.ranks = draw_rank_pattern(rng, dim);
    try {
        const PentagonScenario s = random_pentagon(dim, rec.ranks, derive_seed(seed, 1), tol);
        rec.theorem1 = verify_theorem1(s, tol);
        rec.chain = verify_proof_chain(s, tol);
    } catch (const ConstructionError&) {
        return std::nullopt;
    }
    return rec;
}

CampaignSummary run_tracial_campaign(std::size_t dim, int count, std::uint64_t base_seed, const Tolerances& tol,
                                     const std::function<void(const ScenarioRecord&)>& on_record)
{
    CampaignSummary summary;
    summary.dim = dim;
    bool first = true;
    for (std::uint64_t seed = base_seed; summary.scenarios < count; ++seed) {
        const auto rec = run_scenario(dim, seed, tol);
        if (!rec) {
            ++summary.infeasible;
            continue;
        }
        ++summary.scenarios;
        if (on_record) on_record(*rec);
        const double chain_slack = rec->chain.min_slack();
        if (first) {
            summary.max_value = rec->theorem1.value;
            summary.min_theorem1_slack = rec->theorem1.bound.slack;
            summary.min_chain_slack = chain_slack;
            first = false;
        } else {
            summary.max_value = std::max(summary.max_value, rec->theorem1.value);
            summary.min_theorem1_slack = std::min(summary.min_theorem1_slack, rec->theorem1.bound.slack);
            summary.min_chain_slack = std::min(summary.min_chain_slack, chain_slack);
        }
        if (!rec->holds()) {
            ++summary.failures;
            if (!summary.first_failure_seed) summary.first_failure_seed = seed;
        }
    }
    return summary;
}

ModularitySummary run_modularity_campaign(std::size_t dim, int count, std::uint64_t base_seed, const Tolerances& tol)
{
    ModularitySummary summary;
    summary.dim = dim;
    for (int k = 0; k < count; ++k) {
        const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(k);
        const auto [P, Q] = random_projection_pair(dim, seed, tol);
        const StepCheck check = verify_trace_modularity(P, Q, tol);
        ++summary.pairs;
        if (projection_meet(P, Q, tol).rank() > 0) ++summary.nonzero_meets;
        summary.max_residual = std::max(summary.max_residual, -check.slack);
        if (!check.holds()) {
            ++summary.failures;
            if (!summary.first_failure_seed) summary.first_failure_seed = seed;
        }
    }
    return summary;
}

} // namespace contextia
