#include "contextia/io.hpp"

#include "contextia/errors.hpp"

#include <fstream>
#include <sstream>

namespace contextia {

namespace {

void require_schema(const Json& j, const char* what)
{
    if (!j.is_object()) throw ParseError(std::string(what) + ": expected a JSON object");
    if (j.contains("schema") && j.at("schema") != kSchemaVersion)
        throw ParseError(std::string(what) + ": unsupported schema " + j.at("schema").dump());
}

template <typename T>
T field(const Json& j, const char* key, const char* what)
{
    if (!j.contains(key)) throw ParseError(std::string(what) + ": missing field \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string(what) + ": field \"" + key + "\" has the wrong type (" + e.what() + ")");
    }
}

} // namespace

Json matrix_to_json(const ComplexMatrix& M)
{
    Json re = Json::array();
    Json im = Json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        Json rr = Json::array();
        Json ri = Json::array();
        for (Eigen::Index k = 0; k < M.cols(); ++k) {
            rr.push_back(M(i, k).real());
            ri.push_back(M(i, k).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ri));
    }
    return Json{{"dim", M.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const Json& j)
{
    if (!j.is_object()) throw ParseError("matrix: expected a JSON object");
    const auto dim = field<long long>(j, "dim", "matrix");
    if (dim <= 0 || dim > 100000) throw ParseError("matrix: dim must be positive");
    const auto re = field<std::vector<std::vector<double>>>(j, "re", "matrix");
    const auto im = field<std::vector<std::vector<double>>>(j, "im", "matrix");
    const auto n = static_cast<std::size_t>(dim);
    if (re.size() != n || im.size() != n) throw ParseError("matrix: row count does not match dim");
    ComplexMatrix M(dim, dim);
    for (std::size_t r = 0; r < n; ++r) {
        if (re[r].size() != n || im[r].size() != n) throw ParseError("matrix: row length does not match dim");
        for (std::size_t c = 0; c < n; ++c)
            M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = Complex(re[r][c], im[r][c]);
    }
    return M;
}

Json graph_to_json(const ExclusivityGraph& g)
{
    Json edges = Json::array();
    for (const auto& [a, b] : g.edges()) edges.push_back(Json::array({a, b}));
    return Json{{"schema", kSchemaVersion}, {"n", g.n_vertices()}, {"edges", std::move(edges)}};
}

ExclusivityGraph graph_from_json(const Json& j)
{
    require_schema(j, "graph");
    const auto n = field<long long>(j, "n", "graph");
    if (n <= 0) throw ParseError("graph: n must be positive");
    const auto raw = field<std::vector<std::vector<long long>>>(j, "edges", "graph");
    std::vector<ExclusivityGraph::Edge> edges;
    for (const auto& e : raw) {
        if (e.size() != 2 || e[0] < 0 || e[1] < 0) throw ParseError("graph: each edge must be a pair of indices");
        edges.emplace_back(static_cast<std::size_t>(e[0]), static_cast<std::size_t>(e[1]));
    }
    try {
        return ExclusivityGraph(static_cast<std::size_t>(n), std::move(edges));
    } catch (const ValidationError& e) {
        throw ParseError(e.what());
    }
}

Json model_to_json(const HiddenVariableModel& model)
{
    Json masks = Json::array();
    for (const auto& a : model.lambdas()) masks.push_back(a.mask());
    return Json{{"schema", kSchemaVersion},
                {"graph", graph_to_json(model.graph())},
                {"assignments", std::move(masks)},
                {"weights", model.mu()}};
}

HiddenVariableModel model_from_json(const Json& j)
{
    require_schema(j, "model");
    if (!j.contains("graph")) throw ParseError("model: missing field \"graph\"");
    ExclusivityGraph g = graph_from_json(j.at("graph"));
    const auto masks = field<std::vector<std::uint64_t>>(j, "assignments", "model");
    auto weights = field<std::vector<double>>(j, "weights", "model");
    std::vector<ValueAssignment01> lambdas;
    lambdas.reserve(masks.size());
    for (auto m : masks) lambdas.emplace_back(g, m);
    return HiddenVariableModel(std::move(g), std::move(lambdas), std::move(weights));
}

Json scenario_to_json(const PentagonScenario& s, const std::string& id)
{
    Json projections = Json::array();
    for (const auto& p : s.projections()) projections.push_back(matrix_to_json(p.matrix()));
    Json j{{"schema", kSchemaVersion}, {"id", id}, {"dim", s.dim()}, {"projections", std::move(projections)}};
    if (s.state()) j["state"] = matrix_to_json(s.state()->matrix());
    return j;
}

ScenarioDocument scenario_document_from_json(const Json& j)
{
    require_schema(j, "scenario");
    ScenarioDocument doc;
    doc.id = j.contains("id") ? field<std::string>(j, "id", "scenario") : std::string("scenario");
    if (!j.contains("projections") || !j.at("projections").is_array() ||
        j.at("projections").size() != kPentagonSize)
        throw ParseError("scenario: \"projections\" must be an array of 5 matrices");
    for (std::size_t i = 0; i < kPentagonSize; ++i) doc.projections[i] = matrix_from_json(j.at("projections")[i]);
    const auto dim = doc.projections[0].rows();
    for (const auto& p : doc.projections)
        if (p.rows() != dim) throw ParseError("scenario: projections differ in dimension");
    if (j.contains("dim") && field<long long>(j, "dim", "scenario") != dim)
        throw ParseError("scenario: \"dim\" does not match the matrices");
    if (j.contains("state") && !j.at("state").is_null()) {
        doc.state = matrix_from_json(j.at("state"));
        if (doc.state->rows() != dim) throw ParseError("scenario: state dimension does not match");
    }
    return doc;
}

PentagonScenario build_scenario(const ScenarioDocument& doc, const Tolerances& tol)
{
    std::optional<DensityState> state;
    if (doc.state) state.emplace(*doc.state, tol);
    return PentagonScenario({Projection(doc.projections[0], tol), Projection(doc.projections[1], tol),
                             Projection(doc.projections[2], tol), Projection(doc.projections[3], tol),
                             Projection(doc.projections[4], tol)},
                            std::move(state), tol);
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return Json::parse(buffer.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

} // namespace contextia
