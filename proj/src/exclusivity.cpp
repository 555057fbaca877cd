#include "contextia/exclusivity.hpp"

#include "contextia/errors.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace contextia {

namespace {

void require_enumerable(std::size_t n, const char* op)
{
    if (n > kMaxEnumerationVertices)
        throw CapacityError(std::string(op) + ": " + std::to_string(n) + " vertices exceeds the exhaustive cap of " +
                            std::to_string(kMaxEnumerationVertices));
}

} // namespace

ExclusivityGraph::ExclusivityGraph(std::size_t n_vertices, std::vector<Edge> edges)
    : n_(n_vertices), edges_(std::move(edges))
{
    if (n_ == 0) throw ValidationError("ExclusivityGraph: n_vertices must be positive");
    if (n_ > 64) throw CapacityError("ExclusivityGraph: at most 64 vertices are supported");
    for (auto& [a, b] : edges_) {
        if (a >= n_ || b >= n_)
            throw ValidationError("ExclusivityGraph: edge (" + std::to_string(a) + "," + std::to_string(b) +
                                  ") out of range for " + std::to_string(n_) + " vertices");
        if (a == b) throw ValidationError("ExclusivityGraph: self-loop at vertex " + std::to_string(a));
        if (a > b) std::swap(a, b);
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    adjacency_.assign(n_, 0);
    for (const auto& [a, b] : edges_) {
        adjacency_[a] |= std::uint64_t{1} << b;
        adjacency_[b] |= std::uint64_t{1} << a;
    }
}

bool ExclusivityGraph::adjacent(std::size_t i, std::size_t j) const
{
    return i < n_ && j < n_ && ((adjacency_[i] >> j) & 1U);
}

ExclusivityGraph cycle_graph(std::size_t n)
{
    if (n < 3) throw ValidationError("cycle_graph: n must be at least 3, got " + std::to_string(n));
    std::vector<ExclusivityGraph::Edge> edges;
    for (std::size_t i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return ExclusivityGraph(n, std::move(edges));
}

ExclusivityGraph complete_graph(std::size_t n)
{
    std::vector<ExclusivityGraph::Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return ExclusivityGraph(n, std::move(edges));
}

ValueAssignment01::ValueAssignment01(const ExclusivityGraph& graph, std::uint64_t mask)
    : mask_(mask), n_(graph.n_vertices())
{
    if (n_ < 64 && (mask >> n_) != 0) throw ValidationError("ValueAssignment01: mask has bits beyond the vertex count");
    if (!is_admissible(graph, mask))
        throw ValidationError("ValueAssignment01: assigns 1 to both ends of an exclusive pair");
}

int ValueAssignment01::total() const
{
    return std::popcount(mask_);
}

ValueAssignmentPM::ValueAssignmentPM(std::size_t n, std::uint64_t negative_mask)
    : mask_(negative_mask), n_(n)
{
    if (n == 0 || n > 64) throw ValidationError("ValueAssignmentPM: size must be in [1, 64]");
    if (n < 64 && (negative_mask >> n) != 0)
        throw ValidationError("ValueAssignmentPM: mask has bits beyond the vertex count");
}

int ValueAssignmentPM::cycle_correlation() const
{
    int sum = 0;
    for (std::size_t i = 0; i < n_; ++i) sum += (*this)[i] * (*this)[(i + 1) % n_];
    return sum;
}

bool is_admissible(const ExclusivityGraph& graph, std::uint64_t mask)
{
    for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
        const auto v = static_cast<std::size_t>(std::countr_zero(rest));
        if (v >= graph.n_vertices()) return false;
        if (graph.neighbours(v) & mask) return false;
    }
    return true;
}

std::vector<ValueAssignment01> enumerate_assignments_01(const ExclusivityGraph& graph)
{
    const std::size_t n = graph.n_vertices();
    require_enumerable(n, "enumerate_assignments_01");
    std::vector<ValueAssignment01> out;
    const std::uint64_t end = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < end; ++mask)
        if (is_admissible(graph, mask)) out.emplace_back(graph, mask);
    return out;
}

int noncontextual_bound(const ExclusivityGraph& graph)
{
    int best = 0;
    for (const auto& a : enumerate_assignments_01(graph)) best = std::max(best, a.total());
    return best;
}

int pm_cycle_min(std::size_t n)
{
    if (n < 3 || n > kMaxEnumerationVertices)
        throw ValidationError("pm_cycle_min: n must be in [3, " + std::to_string(kMaxEnumerationVertices) +
                              "], got " + std::to_string(n));
    // s_i s_{i+1} = -1 exactly where bit i differs from bit i+1 (cyclically)
    const std::uint64_t end = std::uint64_t{1} << n;
    const std::uint64_t full = end - 1;
    int max_disagreements = 0;
    for (std::uint64_t mask = 0; mask < end; ++mask) {
        const std::uint64_t rotated = ((mask >> 1) | (mask << (n - 1))) & full;
        max_disagreements = std::max(max_disagreements, std::popcount(mask ^ rotated));
    }
    return static_cast<int>(n) - 2 * max_disagreements;
}

} // namespace contextia
