// cli.hpp: command-line front end.
//
// Exit codes: 0 success, 1 a verified property failed, 2 usage or parse
// error, 3 capacity exceeded.

#pragma once

#include "contextia/io.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace contextia::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitPropertyFailure = 1,
    kExitUsage = 2,
    kExitCapacity = 3,
};

enum class Format { json, csv };

struct RunConfig {
    double tolerance = 1e-10;
    std::uint64_t seed = 0;
    int trials = 1;
    std::string output_path;
    Format format = Format::json;

    void validate() const; // ValidationError
    Tolerances tolerances() const;
};

struct ViolationReport {
    std::string scenario_id;
    double value = 0.0;
    double classical_bound = kPentagonClassicalBound;
    bool violated = false;
    std::optional<Json> witness;

    static ViolationReport make(std::string id, double value, std::optional<Json> witness = {});
    Json to_json() const;
};

// args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace contextia::cli
