// io.hpp: versioned JSON forms of matrices, graphs, models and scenarios.
//
//   matrix   {"dim": n, "re": [[...]], "im": [[...]]}            (row-major)
//   graph    {"schema": "v1", "n": n, "edges": [[i, j], ...]}
//   model    {"schema": "v1", "graph": {...}, "assignments": [mask, ...],
//             "weights": [w, ...]}
//   scenario {"schema": "v1", "id": "...", "dim": n,
//             "projections": [matrix x 5], "state": matrix (optional)}
//
// A missing "schema" field is read as "v1"; any other value is rejected.

#pragma once

#include "contextia/constructions.hpp"
#include "contextia/hvm.hpp"

#include "json.hpp"

#include <array>
#include <optional>
#include <string>

namespace contextia {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "v1";

Json matrix_to_json(const ComplexMatrix& M);
ComplexMatrix matrix_from_json(const Json& j);

Json graph_to_json(const ExclusivityGraph& g);
ExclusivityGraph graph_from_json(const Json& j);

Json model_to_json(const HiddenVariableModel& model);
HiddenVariableModel model_from_json(const Json& j);

// Matrices as read, before any projection/state validation.
struct ScenarioDocument {
    std::string id;
    std::array<ComplexMatrix, kPentagonSize> projections;
    std::optional<ComplexMatrix> state;
};

Json scenario_to_json(const PentagonScenario& s, const std::string& id);
ScenarioDocument scenario_document_from_json(const Json& j);

// Validates projections, cyclic orthogonality and the state (ValidationError).
PentagonScenario build_scenario(const ScenarioDocument& doc, const Tolerances& tol = {});

// ParseError when the file is unreadable or not JSON.
Json read_json_file(const std::string& path);

} // namespace contextia
