#include "contextia/hvm.hpp"

#include "contextia/errors.hpp"
#include "contextia/random.hpp"

#include <cmath>
#include <string>

namespace contextia {

namespace {

std::vector<double> simplex_sample(Rng& rng, std::size_t count)
{
    std::vector<double> w(count);
    double sum = 0.0;
    for (auto& x : w) {
        x = rng.exponential();
        sum += x;
    }
    for (auto& x : w) x /= sum;
    return w;
}

} // namespace

void require_probability_measure(const std::vector<double>& weights, const char* what)
{
    if (weights.empty()) throw ValidationError(std::string(what) + ": empty measure");
    double sum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double w = weights[i];
        if (!std::isfinite(w) || w < 0.0)
            throw ValidationError(std::string(what) + ": weight " + std::to_string(i) + " is negative or non-finite");
        sum += w;
    }
    if (std::abs(sum - 1.0) > kMeasureTolerance)
        throw ValidationError(std::string(what) + ": weights sum to " + std::to_string(sum) + ", not 1");
}

HiddenVariableModel::HiddenVariableModel(ExclusivityGraph graph, std::vector<ValueAssignment01> lambdas,
                                         std::vector<double> mu)
    : graph_(std::move(graph)), lambdas_(std::move(lambdas)), mu_(std::move(mu))
{
    if (lambdas_.size() != mu_.size())
        throw ValidationError("HiddenVariableModel: " + std::to_string(lambdas_.size()) + " assignments but " +
                              std::to_string(mu_.size()) + " weights");
    require_probability_measure(mu_, "HiddenVariableModel");
    for (const auto& a : lambdas_)
        if (a.size() != graph_.n_vertices() || !is_admissible(graph_, a.mask()))
            throw ValidationError("HiddenVariableModel: assignment does not belong to the graph");
}

ModelPrediction hvm_predict(const HiddenVariableModel& model)
{
    const std::size_t n = model.graph().n_vertices();
    ModelPrediction out;
    out.vertex_probs.assign(n, 0.0);
    for (std::size_t k = 0; k < model.lambdas().size(); ++k) {
        const auto& a = model.lambdas()[k];
        for (std::size_t i = 0; i < n; ++i)
            if (a[i]) out.vertex_probs[i] += model.mu()[k];
    }
    for (double p : out.vertex_probs) out.total += p;
    return out;
}

HiddenVariableModel hvm_random(const ExclusivityGraph& graph, std::uint64_t seed)
{
    auto lambdas = enumerate_assignments_01(graph);
    Rng rng(seed);
    auto mu = simplex_sample(rng, lambdas.size());
    return HiddenVariableModel(graph, std::move(lambdas), std::move(mu));
}

HiddenVariableModel mix_models(const HiddenVariableModel& a, const HiddenVariableModel& b, double weight)
{
    if (!(weight >= 0.0 && weight <= 1.0)) throw ValidationError("mix_models: weight must lie in [0, 1]");
    if (a.graph().n_vertices() != b.graph().n_vertices() || a.graph().edges() != b.graph().edges())
        throw ValidationError("mix_models: models live on different graphs");
    std::vector<ValueAssignment01> lambdas = a.lambdas();
    lambdas.insert(lambdas.end(), b.lambdas().begin(), b.lambdas().end());
    std::vector<double> mu;
    mu.reserve(lambdas.size());
    for (double w : a.mu()) mu.push_back(weight * w);
    for (double w : b.mu()) mu.push_back((1.0 - weight) * w);
    return HiddenVariableModel(a.graph(), std::move(lambdas), std::move(mu));
}

double pm_model_value(std::size_t cycle_n, const SignMeasure& measure)
{
    if (cycle_n < 3 || cycle_n > kMaxEnumerationVertices)
        throw ValidationError("pm_model_value: cycle length must be in [3, 24]");
    if (measure.n != cycle_n) throw ValidationError("pm_model_value: measure is over a different cycle length");
    if (measure.negative_masks.size() != measure.weights.size())
        throw ValidationError("pm_model_value: sign vectors and weights differ in length");
    require_probability_measure(measure.weights, "pm_model_value");

    double value = 0.0;
    for (std::size_t k = 0; k < measure.weights.size(); ++k)
        value += measure.weights[k] * ValueAssignmentPM(cycle_n, measure.negative_masks[k]).cycle_correlation();
    return value;
}

SignMeasure pm_random_measure(std::size_t cycle_n, std::uint64_t seed)
{
    if (cycle_n < 3 || cycle_n > kMaxEnumerationVertices)
        throw ValidationError("pm_random_measure: cycle length must be in [3, 24]");
    SignMeasure m;
    m.n = cycle_n;
    const std::uint64_t count = std::uint64_t{1} << cycle_n;
    m.negative_masks.reserve(count);
    for (std::uint64_t mask = 0; mask < count; ++mask) m.negative_masks.push_back(mask);
    Rng rng(seed);
    m.weights = simplex_sample(rng, count);
    return m;
}

} // namespace contextia
