#include "doctest.h"

#include "contextia/cli.hpp"
#include "contextia/constructions.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace contextia;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
    std::string err;

    std::vector<Json> records() const
    {
        std::vector<Json> rs;
        std::istringstream in(out);
        for (std::string line; std::getline(in, line);)
            if (!line.empty()) rs.push_back(Json::parse(line));
        return rs;
    }
};

Outcome run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    Outcome o;
    o.code = cli::run(args, out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

std::string data(const char* name)
{
    return std::string(CONTEXTIA_TEST_DATA) + "/" + name;
}

const Json& find(const std::vector<Json>& rs, const std::string& key, const std::string& value)
{
    for (const auto& r : rs)
        if (r.contains(key) && r.at(key) == value) return r;
    throw std::runtime_error("record not found: " + value);
}

std::string temp_path(const char* name)
{
    return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_SUITE("bound")
{
    TEST_CASE("pentagon and complete graph")
    {
        auto o = run({"bound", data("pentagon.json")});
        CHECK(o.code == 0);
        const auto r = o.records().at(0);
        CHECK(r.at("bound") == 2);
        CHECK(r.at("assignments") == 11);
        CHECK(r.at("schema") == "v1");

        CHECK(run({"bound", data("k5.json")}).records().at(0).at("bound") == 1);

        o = run({"--format", "csv", "bound", data("pentagon.json")});
        CHECK(o.out == "n,bound,assignments\n5,2,11\n");
    }

    TEST_CASE("error codes")
    {
        auto o = run({"bound", data("malformed.json")});
        CHECK(o.code == cli::kExitUsage);
        CHECK_FALSE(o.err.empty());
        CHECK(run({"bound", data("cycle25.json")}).code == cli::kExitCapacity);
        CHECK(run({"bound", data("self_loop.json")}).code == cli::kExitUsage);
        CHECK(run({"bound"}).code == cli::kExitUsage);
        CHECK(run({}).code == cli::kExitUsage);
        CHECK(run({"frobnicate"}).code == cli::kExitUsage);
        CHECK(run({"--format", "xml", "bound", data("pentagon.json")}).code == cli::kExitUsage);
        CHECK(run({"--tolerance", "-1", "bound", data("pentagon.json")}).code == cli::kExitUsage);
    }
}

TEST_SUITE("kcbs")
{
    TEST_CASE("default run")
    {
        const auto o = run({"kcbs"});
        REQUIRE(o.code == 0);
        const auto rs = o.records();
        CHECK(rs.size() == 5);
        const auto& p = find(rs, "scenario_id", "pentagon_dim3");
        CHECK(std::abs(p.at("value").get<double>() - std::sqrt(5.0)) <= 1e-12);
        CHECK(p.at("violated") == true);
        CHECK(p.at("classical_bound") == 2.0);
        for (const auto& r : rs) CHECK(r.at("violated") == true);
        CHECK(find(rs, "scenario_id", "matrix_units_m2").at("witness").at("dim") == 6);
    }

    TEST_CASE("epsilon handling")
    {
        const auto o = run({"kcbs", "--epsilon", "0.2"});
        REQUIRE(o.code == 0);
        const auto rs = o.records();
        const auto& m = find(rs, "scenario_id", "mixture_eps");
        CHECK(m.at("value").get<double>() >= std::sqrt(5.0) - 0.2);

        const auto bad = run({"kcbs", "--epsilon", "0.3"});
        CHECK(bad.code == cli::kExitUsage);
        CHECK(bad.err.find("(0, sqrt(5) - 2)") != std::string::npos);
        CHECK(run({"kcbs", "--epsilon", "0"}).code == cli::kExitUsage);
        CHECK(run({"kcbs", "--multiplicity", "40"}).code == cli::kExitCapacity);
    }

    TEST_CASE("conjugation seed is reproducible")
    {
        const auto a = run({"kcbs", "--conjugate-seed", "5"});
        const auto b = run({"kcbs", "--conjugate-seed", "5"});
        CHECK(a.out == b.out);
    }

    TEST_CASE("csv")
    {
        const auto o = run({"--format", "csv", "kcbs"});
        CHECK(o.code == 0);
        CHECK(o.out.rfind("scenario_id,value,classical_bound,violated\n", 0) == 0);
    }
}

TEST_SUITE("tracial")
{
    TEST_CASE("seed replay is byte-identical")
    {
        const std::vector<std::string> args{"--seed", "17", "tracial", "--dims", "3,4", "--trials", "30", "--records"};
        const auto a = run(args);
        const auto b = run(args);
        REQUIRE(a.code == 0);
        CHECK(a.out == b.out);
        const auto rs = a.records();
        int scenarios = 0;
        for (const auto& r : rs)
            if (r.at("check") == "scenario") ++scenarios;
        CHECK(scenarios == 60);
        const auto c = run({"--seed", "18", "tracial", "--dims", "3,4", "--trials", "30", "--records"});
        CHECK(c.out != a.out);
    }

    TEST_CASE("campaign records")
    {
        const auto o = run({"tracial", "--dims", "2,5", "--trials", "50"});
        REQUIRE(o.code == 0);
        const auto rs = o.records();
        const auto& d2 = find(rs, "check", "dim2_no_violation");
        CHECK(d2.at("value").get<double>() <= 2.0 + 1e-10);
        CHECK(d2.at("feasible") == d2.at("with_zero_projection"));
        int campaigns = 0;
        for (const auto& r : rs)
            if (r.at("check") == "theorem1_campaign") {
                ++campaigns;
                CHECK(r.at("failures") == 0);
                CHECK(r.at("scenarios") == 50);
                CHECK(r.at("value").get<double>() <= 2.0 + 1e-9);
            }
        CHECK(campaigns == 2);
    }

    TEST_CASE("bad dims")
    {
        CHECK(run({"tracial", "--dims", "9"}).code == cli::kExitUsage);
        CHECK(run({"tracial", "--trials", "0"}).code == cli::kExitUsage);
    }

    TEST_CASE("seed from the environment")
    {
        setenv("CONTEXTIA_SEED", "23", 1);
        const auto env = run({"tracial", "--trials", "10"});
        unsetenv("CONTEXTIA_SEED");
        const auto flag = run({"--seed", "23", "tracial", "--trials", "10"});
        CHECK(env.code == 0);
        CHECK(env.out == flag.out);
        CHECK(env.records().at(0).at("seed") == 23);

        setenv("CONTEXTIA_SEED", "abc", 1);
        CHECK(run({"tracial", "--trials", "10"}).code == cli::kExitUsage);
        unsetenv("CONTEXTIA_SEED");
        CHECK(run({"tracial", "--trials", "10"}).records().at(0).at("seed") == 1);
    }
}

TEST_SUITE("hvm")
{
    TEST_CASE("fuzz on the pentagon")
    {
        const auto o = run({"hvm", "--trials", "500"});
        REQUIRE(o.code == 0);
        const auto rs = o.records();
        CHECK(find(rs, "check", "hvm_ceiling").at("value").get<double>() <= 2.0 + 1e-12);
        CHECK(find(rs, "check", "pm_floor").at("value").get<double>() >= -3.0 - 1e-12);
    }

    TEST_CASE("model file")
    {
        const auto o = run({"hvm", "--model", data("model_pairs.json")});
        REQUIRE(o.code == 0);
        CHECK(std::abs(o.records().at(0).at("value").get<double>() - 2.0) <= 1e-12);
    }

    TEST_CASE("graph file")
    {
        const auto o = run({"hvm", "--graph", data("k5.json"), "--trials", "100"});
        REQUIRE(o.code == 0);
        CHECK(o.records().size() == 1);
        CHECK(o.records().at(0).at("bound") == 1);
    }
}

TEST_SUITE("scan")
{
    TEST_CASE("two-point grid")
    {
        const auto o = run({"scan", "--theta-range", "0.5", "1.0", "--steps", "2"});
        REQUIRE(o.code == 0);
        std::istringstream in(o.out);
        std::string header, row;
        std::getline(in, header);
        CHECK(header == "theta,adjacent_overlap,pentagon_value,orthogonal");
        int rows = 0;
        while (std::getline(in, row)) ++rows;
        CHECK(rows == 2);
    }

    TEST_CASE("orthogonal row near the critical angle")
    {
        const auto o = run({"--format", "json", "scan", "--theta-range", "0.8", "0.9", "--steps", "101"});
        REQUIRE(o.code == 0);
        int flagged = 0;
        for (const auto& r : o.records())
            if (r.at("orthogonal") == true) {
                ++flagged;
                CHECK(std::abs(r.at("theta").get<double>() - umbrella_critical_angle()) <= 0.0005 + 1e-12);
                CHECK(std::abs(r.at("pentagon_value").get<double>() - std::sqrt(5.0)) <= 0.01);
            }
        CHECK(flagged == 1);
    }

    TEST_CASE("invalid ranges")
    {
        CHECK(run({"scan", "--theta-range", "0.7", "0.7"}).code == cli::kExitUsage);
        CHECK(run({"scan", "--theta-range", "0.9", "0.7"}).code == cli::kExitUsage);
        CHECK(run({"scan", "--theta-range", "0", "0.7"}).code == cli::kExitUsage);
        CHECK(run({"scan", "--theta-range", "0.1", "0.7", "--steps", "1"}).code == cli::kExitUsage);
    }
}

TEST_SUITE("verify")
{
    TEST_CASE("round trip through --scenario-out")
    {
        const auto path = temp_path("contextia_scenario_roundtrip.json");
        REQUIRE(run({"kcbs", "--scenario-out", path}).code == 0);
        const auto o = run({"verify", path});
        REQUIRE(o.code == 0);
        const auto r = o.records().at(0);
        CHECK(r.at("valid") == true);
        CHECK(r.at("ranks") == Json::array({1, 1, 1, 1, 1}));
        CHECK(std::abs(r.at("tracial_value").get<double>() - 5.0 / 3.0) <= 1e-12);
        CHECK(std::abs(r.at("report").at("value").get<double>() - std::sqrt(5.0)) <= 1e-12);
        CHECK(r.at("report").at("violated") == true);
        std::filesystem::remove(path);
    }

    TEST_CASE("invalid scenario and parse errors")
    {
        const auto path = temp_path("contextia_scenario_invalid.json");
        {
            Json s = scenario_to_json(kcbs_pentagon(), "broken");
            s["projections"][1] = s["projections"][0];
            std::ofstream(path) << s.dump();
        }
        const auto o = run({"verify", path});
        CHECK(o.code == cli::kExitPropertyFailure);
        CHECK(o.records().at(0).at("valid") == false);
        std::filesystem::remove(path);

        CHECK(run({"verify", data("malformed.json")}).code == cli::kExitUsage);
    }
}

TEST_CASE("output file")
{
    const auto path = temp_path("contextia_output.jsonl");
    const auto o = run({"--output", path, "bound", data("pentagon.json")});
    CHECK(o.code == 0);
    CHECK(o.out.empty());
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(Json::parse(line).at("bound") == 2);
    std::filesystem::remove(path);
}

TEST_CASE("report serialization")
{
    const auto r = cli::ViolationReport::make("x", 2.5);
    CHECK(r.violated);
    CHECK_FALSE(cli::ViolationReport::make("y", 2.0).violated);
    const Json j = r.to_json();
    CHECK(j.at("witness").is_null());
    CHECK(j.at("classical_bound") == 2.0);
}
