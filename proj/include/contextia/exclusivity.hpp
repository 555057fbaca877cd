// exclusivity.hpp: exclusivity graphs and exhaustive classical analysis.
//
// A {0,1} value assignment must vanish on at least one end of every edge, so
// the admissible assignments are exactly the independent sets of the graph and
// the noncontextual bound is its independence number.

#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace contextia {

// Hard cap for the 2^n scans below.
inline constexpr std::size_t kMaxEnumerationVertices = 24;

class ExclusivityGraph {
public:
    using Edge = std::pair<std::size_t, std::size_t>;

    // Edges are stored normalized (i < j), sorted and deduplicated. Self-loops
    // and out-of-range indices throw ValidationError.
    ExclusivityGraph(std::size_t n_vertices, std::vector<Edge> edges);

    std::size_t n_vertices() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    bool adjacent(std::size_t i, std::size_t j) const;

    // Bitmask of neighbours of v (valid while n_vertices <= 64).
    std::uint64_t neighbours(std::size_t v) const { return adjacency_[v]; }

private:
    std::size_t n_;
    std::vector<Edge> edges_;
    std::vector<std::uint64_t> adjacency_;
};

ExclusivityGraph cycle_graph(std::size_t n);
ExclusivityGraph complete_graph(std::size_t n);

// Values in {0,1}, bit i of the mask is the value of vertex i.
class ValueAssignment01 {
public:
    ValueAssignment01(const ExclusivityGraph& graph, std::uint64_t mask);

    std::uint64_t mask() const { return mask_; }
    std::size_t size() const { return n_; }
    int operator[](std::size_t i) const { return static_cast<int>((mask_ >> i) & 1U); }
    int total() const;

private:
    std::uint64_t mask_;
    std::size_t n_;
};

// Values in {-1,+1}; bit i set means vertex i carries -1.
class ValueAssignmentPM {
public:
    ValueAssignmentPM(std::size_t n, std::uint64_t negative_mask);

    std::uint64_t negative_mask() const { return mask_; }
    std::size_t size() const { return n_; }
    int operator[](std::size_t i) const { return ((mask_ >> i) & 1U) ? -1 : 1; }

    // sum_i s_i s_{i+1 mod n}
    int cycle_correlation() const;

private:
    std::uint64_t mask_;
    std::size_t n_;
};

// True when no edge has both endpoints set.
bool is_admissible(const ExclusivityGraph& graph, std::uint64_t mask);

// Every admissible assignment, ascending by mask. CapacityError above the cap.
std::vector<ValueAssignment01> enumerate_assignments_01(const ExclusivityGraph& graph);

// max over admissible assignments of the number of 1-values.
int noncontextual_bound(const ExclusivityGraph& graph);

// min over all sign vectors on the n-cycle of sum_i s_i s_{i+1}.
int pm_cycle_min(std::size_t n);

} // namespace contextia
