#include "doctest.h"

#include "contextia/errors.hpp"
#include "contextia/io.hpp"
#include "contextia/random.hpp"

#include <string>

using namespace contextia;

namespace {

std::string data(const char* name)
{
    return std::string(CONTEXTIA_TEST_DATA) + "/" + name;
}

} // namespace

TEST_CASE("matrix round trip is bit-exact")
{
    Rng rng(1);
    for (int k = 0; k < 20; ++k) {
        const ComplexMatrix M = gaussian_matrix(rng, 4, 4);
        const ComplexMatrix back = matrix_from_json(Json::parse(matrix_to_json(M).dump()));
        CHECK((back.array() == M.array()).all());
    }
}

TEST_CASE("scenario round trip")
{
    const auto s = kcbs_pentagon();
    const Json j = Json::parse(scenario_to_json(s, "p").dump());
    CHECK(j.at("schema") == "v1");
    const auto doc = scenario_document_from_json(j);
    CHECK(doc.id == "p");
    for (std::size_t i = 0; i < kPentagonSize; ++i) CHECK((doc.projections[i].array() == s[i].matrix().array()).all());
    REQUIRE(doc.state.has_value());
    const auto rebuilt = build_scenario(doc);
    CHECK(scenario_value(rebuilt) == scenario_value(s));
}

TEST_CASE("graph and model round trips")
{
    const auto g = cycle_graph(5);
    const auto g2 = graph_from_json(graph_to_json(g));
    CHECK(g2.edges() == g.edges());

    const auto m = hvm_random(g, 4);
    const auto m2 = model_from_json(Json::parse(model_to_json(m).dump()));
    CHECK(m2.mu() == m.mu());
    REQUIRE(m2.lambdas().size() == m.lambdas().size());
    for (std::size_t k = 0; k < m.lambdas().size(); ++k) CHECK(m2.lambdas()[k].mask() == m.lambdas()[k].mask());
}

TEST_CASE("files")
{
    CHECK(graph_from_json(read_json_file(data("pentagon.json"))).n_vertices() == 5);
    CHECK(graph_from_json(read_json_file(data("k5.json"))).edges().size() == 10);
    CHECK_THROWS_AS(read_json_file(data("malformed.json")), ParseError);
    CHECK_THROWS_AS(read_json_file(data("does_not_exist.json")), ParseError);
    CHECK_THROWS_AS(graph_from_json(read_json_file(data("self_loop.json"))), ParseError);
    const auto model = model_from_json(read_json_file(data("model_pairs.json")));
    CHECK(std::abs(hvm_predict(model).total - 2.0) <= 1e-12);
}

TEST_CASE("schema and shape errors")
{
    Json g = graph_to_json(cycle_graph(3));
    g["schema"] = "v2";
    CHECK_THROWS_AS(graph_from_json(g), ParseError);
    g.erase("schema");
    CHECK_NOTHROW(graph_from_json(g));

    CHECK_THROWS_AS(graph_from_json(Json{{"n", 3}}), ParseError);
    CHECK_THROWS_AS(graph_from_json(Json{{"n", "three"}, {"edges", Json::array()}}), ParseError);
    CHECK_THROWS_AS(graph_from_json(Json::array()), ParseError);

    Json m = matrix_to_json(ComplexMatrix::Identity(2, 2));
    m["dim"] = 3;
    CHECK_THROWS_AS(matrix_from_json(m), ParseError);

    Json s = scenario_to_json(kcbs_pentagon(), "x");
    s["projections"].erase(4);
    CHECK_THROWS_AS(scenario_document_from_json(s), ParseError);
}

TEST_CASE("invalid projections parse but fail validation")
{
    Json s = scenario_to_json(kcbs_pentagon(), "bad");
    s["projections"][1] = s["projections"][0];
    const auto doc = scenario_document_from_json(s);
    CHECK_THROWS_AS(build_scenario(doc), ValidationError);
}
