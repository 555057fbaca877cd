// hvm.hpp: finite hidden-variable models over value assignments.
//
// The hidden-variable space is a finite list of admissible assignments with a
// probability weight each; predictions are the weighted averages of the
// assignments' values.

#pragma once

#include "contextia/exclusivity.hpp"

#include <cstdint>
#include <vector>

namespace contextia {

inline constexpr double kMeasureTolerance = 1e-12;

// Throws ValidationError unless weights are finite, non-negative and sum to 1
// within kMeasureTolerance.
void require_probability_measure(const std::vector<double>& weights, const char* what);

class HiddenVariableModel {
public:
    HiddenVariableModel(ExclusivityGraph graph, std::vector<ValueAssignment01> lambdas, std::vector<double> mu);

    const ExclusivityGraph& graph() const { return graph_; }
    const std::vector<ValueAssignment01>& lambdas() const { return lambdas_; }
    const std::vector<double>& mu() const { return mu_; }

private:
    ExclusivityGraph graph_;
    std::vector<ValueAssignment01> lambdas_;
    std::vector<double> mu_;
};

struct ModelPrediction {
    std::vector<double> vertex_probs;
    double total = 0.0;
};

ModelPrediction hvm_predict(const HiddenVariableModel& model);

// Weights drawn uniformly from the simplex over every admissible assignment.
HiddenVariableModel hvm_random(const ExclusivityGraph& graph, std::uint64_t seed);

// weight * a + (1 - weight) * b, as a model over the concatenated λ lists.
HiddenVariableModel mix_models(const HiddenVariableModel& a, const HiddenVariableModel& b, double weight);

// Probability measure over ±1 labelings of an n-cycle (bit i set = vertex i is -1).
struct SignMeasure {
    std::size_t n = 0;
    std::vector<std::uint64_t> negative_masks;
    std::vector<double> weights;
};

// sum_i sum_λ s_i(λ) s_{i+1}(λ) μ(λ)
double pm_model_value(std::size_t cycle_n, const SignMeasure& measure);

// Uniform simplex sample over all 2^n sign vectors.
SignMeasure pm_random_measure(std::size_t cycle_n, std::uint64_t seed);

} // namespace contextia
