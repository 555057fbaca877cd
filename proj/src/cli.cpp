#include "contextia/cli.hpp"

#include "contextia/errors.hpp"
#include "contextia/tracial.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace contextia::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 1;
constexpr const char* kSeedEnv = "CONTEXTIA_SEED";

std::string csv_number(double x)
{
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

void emit(std::ostream& out, const Json& j)
{
    out << j.dump() << '\n';
}

Json check_json(const std::string& check, double value, double bound, double slack, std::uint64_t seed)
{
    return Json{{"check", check}, {"value", value}, {"bound", bound}, {"slack", slack}, {"seed", seed}};
}

// One CSV row per record; columns are the union of the common keys.
class RecordWriter {
public:
    RecordWriter(std::ostream& out, Format format) : out_(out), format_(format) {}

    void write(const Json& record)
    {
        if (format_ == Format::json) {
            emit(out_, record);
            return;
        }
        static const std::vector<std::string> columns{"check", "dim", "value", "bound", "slack", "seed", "failures"};
        if (!header_written_) {
            for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
            out_ << '\n';
            header_written_ = true;
        }
        for (std::size_t i = 0; i < columns.size(); ++i) {
            out_ << (i ? "," : "");
            if (!record.contains(columns[i])) continue;
            const Json& v = record.at(columns[i]);
            if (v.is_number_float())
                out_ << csv_number(v.get<double>());
            else if (v.is_string())
                out_ << v.get<std::string>();
            else
                out_ << v.dump();
        }
        out_ << '\n';
    }

private:
    std::ostream& out_;
    Format format_;
    bool header_written_ = false;
};

UnitVector basis_vector(std::size_t dim, std::size_t index)
{
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return UnitVector(v);
}

// ------------------------------------------------------------------ commands

int cmd_bound(const RunConfig& cfg, const std::string& graph_file, std::ostream& out)
{
    const ExclusivityGraph g = graph_from_json(read_json_file(graph_file));
    const auto assignments = enumerate_assignments_01(g);
    int bound = 0;
    for (const auto& a : assignments) bound = std::max(bound, a.total());
    if (cfg.format == Format::csv) {
        out << "n,bound,assignments\n" << g.n_vertices() << ',' << bound << ',' << assignments.size() << '\n';
    } else {
        emit(out, Json{{"schema", kSchemaVersion},
                       {"check", "noncontextual_bound"},
                       {"n", g.n_vertices()},
                       {"bound", bound},
                       {"assignments", assignments.size()}});
    }
    return kExitOk;
}

struct KcbsOptions {
    double epsilon = 0.1;
    std::size_t multiplicity = 2;
    std::optional<std::uint64_t> conjugate_seed;
    std::string scenario_out;
};

int cmd_kcbs(const RunConfig& cfg, const KcbsOptions& opt, std::ostream& out, std::ostream& err)
{
    if (!(opt.epsilon > 0.0 && opt.epsilon < max_mixture_epsilon())) {
        err << "kcbs: --epsilon must lie in the open interval (0, sqrt(5) - 2) = (0, "
            << csv_number(max_mixture_epsilon()) << "), got " << csv_number(opt.epsilon) << '\n';
        return kExitUsage;
    }
    if (opt.multiplicity < 1) {
        err << "kcbs: --multiplicity must be at least 1\n";
        return kExitUsage;
    }
    const Tolerances tol = cfg.tolerances();
    const std::uint64_t seed = opt.conjugate_seed.value_or(cfg.seed);
    std::vector<ViolationReport> reports;

    const PentagonScenario pentagon = kcbs_pentagon(tol);
    reports.push_back(ViolationReport::make("pentagon_dim3", scenario_value(pentagon, tol),
                                            Json{{"state", "pure (0,0,1)"}, {"dim", 3}}));

    const MatrixUnitSystem units = matrix_units(opt.multiplicity);
    const std::size_t dim = units.dim();
    const std::size_t v33_index = 2 * opt.multiplicity; // first basis vector of range(V_33)
    const PentagonScenario blocks = typeiii_projections(units, tol);
    const UnitVector phi = basis_vector(dim, v33_index);
    reports.push_back(ViolationReport::make(
        "matrix_units_m" + std::to_string(opt.multiplicity),
        scenario_value(blocks.with_state(DensityState::pure(phi)), tol),
        Json{{"state", "pure e_" + std::to_string(v33_index) + " in range(V_33)"}, {"dim", dim}}));

    const UnitVector phi_perp = basis_vector(dim, 0);
    const PentagonScenario mixture = blocks.with_state(mixture_state(phi, phi_perp, opt.epsilon, tol));
    const double mixture_value = scenario_value(mixture, tol);
    reports.push_back(ViolationReport::make("mixture_eps",
                                            mixture_value,
                                            Json{{"state", "mixture of e_" + std::to_string(v33_index) + " and e_0"},
                                                 {"epsilon", opt.epsilon},
                                                 {"lower_bound", std::sqrt(5.0) - opt.epsilon},
                                                 {"dim", dim}}));

    Rng rng(seed);
    const ComplexMatrix U = random_unitary(rng, dim);
    const PentagonScenario conjugated = conjugate_scenario(mixture, U, tol);
    reports.push_back(ViolationReport::make("conjugated_mixture", scenario_value(conjugated, tol),
                                            Json{{"state", "U* rho U"}, {"seed", seed}, {"dim", dim}}));

    const UnitVector target = basis_vector(dim, v33_index);
    const UnitVector random_state = random_unit_vector(rng, dim);
    const PentagonScenario aligned = align_to_state(blocks, target, random_state, tol);
    reports.push_back(ViolationReport::make("aligned_state", scenario_value(aligned, tol),
                                            Json{{"state", "random pure state"}, {"seed", seed}, {"dim", dim}}));

    if (!opt.scenario_out.empty()) {
        std::ofstream f(opt.scenario_out);
        if (!f) {
            err << "kcbs: cannot write " << opt.scenario_out << '\n';
            return kExitUsage;
        }
        f << scenario_to_json(pentagon, "pentagon_dim3").dump(2) << '\n';
    }

    bool all_violated = true;
    for (const auto& r : reports) {
        all_violated = all_violated && r.violated;
        if (cfg.format == Format::csv) continue;
        emit(out, r.to_json());
    }
    if (cfg.format == Format::csv) {
        out << "scenario_id,value,classical_bound,violated\n";
        for (const auto& r : reports)
            out << r.scenario_id << ',' << csv_number(r.value) << ',' << csv_number(r.classical_bound) << ','
                << (r.violated ? "true" : "false") << '\n';
    }
    if (mixture_value < std::sqrt(5.0) - opt.epsilon - tol.projection) {
        err << "kcbs: mixture value " << csv_number(mixture_value) << " is below sqrt(5) - epsilon\n";
        return kExitPropertyFailure;
    }
    return all_violated ? kExitOk : kExitPropertyFailure;
}

struct TracialOptions {
    std::vector<int> dims{3};
    int trials = 1000;
    int pairs = -1;
    bool records = false;
};

int cmd_tracial(const RunConfig& cfg, const TracialOptions& opt, std::ostream& out, std::ostream& err)
{
    for (int d : opt.dims)
        if (d < 2 || d > 8) {
            err << "tracial: --dims entries must lie in 2..8, got " << d << '\n';
            return kExitUsage;
        }
    const Tolerances tol = cfg.tolerances();
    const int pairs = opt.pairs < 0 ? opt.trials : opt.pairs;
    RecordWriter writer(out, cfg.format);
    bool failed = false;

    for (int d : opt.dims) {
        const auto dim = static_cast<std::size_t>(d);
        std::function<void(const ScenarioRecord&)> on_record;
        if (opt.records)
            on_record = [&](const ScenarioRecord& r) {
                Json rec = check_json("scenario", r.theorem1.value, kPentagonClassicalBound, r.theorem1.bound.slack,
                                      r.seed);
                rec["dim"] = r.dim;
                rec["ranks"] = r.ranks;
                rec["chain_min_slack"] = r.chain.min_slack();
                rec["holds"] = r.holds();
                writer.write(rec);
            };
        const CampaignSummary s = run_tracial_campaign(dim, opt.trials, cfg.seed, tol, on_record);
        Json t1 = check_json("theorem1_campaign", s.max_value, kPentagonClassicalBound, s.min_theorem1_slack, cfg.seed);
        t1["dim"] = d;
        t1["scenarios"] = s.scenarios;
        t1["infeasible"] = s.infeasible;
        t1["failures"] = s.failures;
        writer.write(t1);
        // value: smallest step slack seen; a step passes while slack >= -tolerance
        Json chain = check_json("proof_chain_campaign", s.min_chain_slack, -kLatticeTolerance,
                                s.min_chain_slack + kLatticeTolerance, cfg.seed);
        chain["dim"] = d;
        chain["failures"] = s.failures;
        writer.write(chain);
        if (s.first_failure_seed) {
            err << "tracial: violation in dim " << d << " at seed " << *s.first_failure_seed << '\n';
            failed = true;
        }

        const ModularitySummary m = run_modularity_campaign(dim, pairs, cfg.seed, tol);
        Json mod = check_json("trace_modularity_campaign", m.max_residual, kLatticeTolerance,
                              kLatticeTolerance - m.max_residual, cfg.seed);
        mod["dim"] = d;
        mod["pairs"] = m.pairs;
        mod["nonzero_meets"] = m.nonzero_meets;
        mod["failures"] = m.failures;
        writer.write(mod);
        if (m.first_failure_seed) {
            err << "tracial: trace modularity fails in dim " << d << " at seed " << *m.first_failure_seed << '\n';
            failed = true;
        }

        if (d == 2) {
            const Dim2Report r = verify_dim2_no_violation(opt.trials, cfg.seed, tol);
            Json rec = check_json("dim2_no_violation", std::max(r.max_eigenvalue, r.max_grid_value),
                                  kPentagonClassicalBound,
                                  kPentagonClassicalBound - std::max(r.max_eigenvalue, r.max_grid_value), cfg.seed);
            rec["dim"] = 2;
            rec["trials"] = r.trials;
            rec["feasible"] = r.feasible;
            rec["with_zero_projection"] = r.with_zero_projection;
            rec["saturating"] = r.saturating;
            rec["max_rank_sum"] = r.max_rank_sum;
            rec["failures"] = r.holds() ? 0 : 1;
            writer.write(rec);
            if (!r.holds()) {
                err << "tracial: dim-2 check failed for seed " << cfg.seed << '\n';
                failed = true;
            }
        }
    }
    return failed ? kExitPropertyFailure : kExitOk;
}

struct HvmOptions {
    std::string graph_file;
    std::string model_file;
    std::size_t cycle = 5;
    int trials = 10000;
};

int cmd_hvm(const RunConfig& cfg, const HvmOptions& opt, std::ostream& out, std::ostream& err)
{
    RecordWriter writer(out, cfg.format);
    if (!opt.model_file.empty()) {
        const HiddenVariableModel model = model_from_json(read_json_file(opt.model_file));
        const ModelPrediction p = hvm_predict(model);
        const int bound = noncontextual_bound(model.graph());
        Json rec{{"check", "hvm_prediction"}, {"value", p.total}, {"bound", bound},
                 {"slack", bound - p.total}, {"vertex_probs", p.vertex_probs}};
        writer.write(rec);
        if (p.total > bound + kMeasureTolerance) {
            err << "hvm: model total exceeds the noncontextual bound\n";
            return kExitPropertyFailure;
        }
        return kExitOk;
    }

    const bool on_cycle = opt.graph_file.empty();
    const ExclusivityGraph g = on_cycle ? cycle_graph(opt.cycle) : graph_from_json(read_json_file(opt.graph_file));
    const int bound = noncontextual_bound(g);
    double max_total = 0.0;
    std::optional<std::uint64_t> worst_seed;
    for (int k = 0; k < opt.trials; ++k) {
        const std::uint64_t s = derive_seed(cfg.seed, static_cast<std::uint64_t>(k));
        const double total = hvm_predict(hvm_random(g, s)).total;
        if (total > max_total || !worst_seed) {
            max_total = total;
            worst_seed = s;
        }
    }
    Json ceiling = check_json("hvm_ceiling", max_total, bound, bound - max_total, cfg.seed);
    ceiling["trials"] = opt.trials;
    ceiling["n"] = g.n_vertices();
    ceiling["failures"] = max_total > bound + kMeasureTolerance ? 1 : 0;
    writer.write(ceiling);
    bool failed = max_total > bound + kMeasureTolerance;

    if (on_cycle) {
        const int floor = pm_cycle_min(opt.cycle);
        double min_value = std::numeric_limits<double>::infinity();
        for (int k = 0; k < opt.trials; ++k) {
            const std::uint64_t s = derive_seed(cfg.seed ^ 0x5bd1e995ULL, static_cast<std::uint64_t>(k));
            min_value = std::min(min_value, pm_model_value(opt.cycle, pm_random_measure(opt.cycle, s)));
        }
        Json pm = check_json("pm_floor", min_value, floor, min_value - floor, cfg.seed);
        pm["trials"] = opt.trials;
        pm["n"] = opt.cycle;
        pm["failures"] = min_value < floor - kMeasureTolerance ? 1 : 0;
        writer.write(pm);
        failed = failed || min_value < floor - kMeasureTolerance;
    }
    if (failed) err << "hvm: classical bound exceeded (seed " << cfg.seed << ")\n";
    return failed ? kExitPropertyFailure : kExitOk;
}

struct ScanOptions {
    std::vector<double> range;
    int steps = 50;
};

int cmd_scan(const RunConfig& cfg, bool json_requested, const ScanOptions& opt, std::ostream& out,
             std::ostream& err)
{
    if (opt.range.size() != 2) {
        err << "scan: --theta-range takes two values\n";
        return kExitUsage;
    }
    const double a = opt.range[0];
    const double b = opt.range[1];
    if (!(a > 0.0 && a < b && b < std::numbers::pi / 2.0)) {
        err << "scan: need 0 < a < b < pi/2\n";
        return kExitUsage;
    }
    if (opt.steps < 2) {
        err << "scan: --steps must be at least 2\n";
        return kExitUsage;
    }
    (void)cfg;

    struct Row {
        double theta, overlap, value;
    };
    std::vector<Row> rows;
    for (int k = 0; k < opt.steps; ++k) {
        const double theta = a + (b - a) * k / (opt.steps - 1);
        const auto family = umbrella_family(theta);
        rows.push_back({theta, umbrella_adjacent_overlap(family), umbrella_centre_value(family)});
    }
    // flag the grid point nearest to orthogonality when the range brackets it
    std::optional<std::size_t> critical;
    const double theta_c = umbrella_critical_angle();
    if (a <= theta_c && theta_c <= b) {
        critical = 0;
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (std::abs(rows[i].overlap) < std::abs(rows[*critical].overlap)) critical = i;
    }

    if (json_requested) {
        for (std::size_t i = 0; i < rows.size(); ++i)
            emit(out, Json{{"theta", rows[i].theta},
                           {"adjacent_overlap", rows[i].overlap},
                           {"pentagon_value", rows[i].value},
                           {"orthogonal", critical && *critical == i}});
    } else {
        out << "theta,adjacent_overlap,pentagon_value,orthogonal\n";
        for (std::size_t i = 0; i < rows.size(); ++i)
            out << csv_number(rows[i].theta) << ',' << csv_number(rows[i].overlap) << ','
                << csv_number(rows[i].value) << ',' << ((critical && *critical == i) ? 1 : 0) << '\n';
    }
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg, const std::string& file, std::ostream& out, std::ostream& err)
{
    const ScenarioDocument doc = scenario_document_from_json(read_json_file(file));
    const Tolerances tol = cfg.tolerances();
    std::optional<PentagonScenario> scenario;
    try {
        scenario.emplace(build_scenario(doc, tol));
    } catch (const ValidationError& e) {
        err << "verify: " << doc.id << ": " << e.what() << '\n';
        emit(out, Json{{"scenario_id", doc.id}, {"valid", false}, {"reason", e.what()}});
        return kExitPropertyFailure;
    }
    const Theorem1Report t1 = verify_theorem1(*scenario, tol);
    Json rec{{"scenario_id", doc.id},
             {"valid", true},
             {"dim", scenario->dim()},
             {"ranks", Json::array()},
             {"tracial_value", t1.value}};
    for (const auto& p : scenario->projections()) rec["ranks"].push_back(p.rank());
    if (scenario->state()) {
        const ViolationReport r = ViolationReport::make(doc.id, scenario_value(*scenario, tol));
        rec["report"] = r.to_json();
    }
    emit(out, rec);
    return t1.holds() ? kExitOk : kExitPropertyFailure;
}

std::uint64_t parse_seed(const std::string& text)
{
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &used, 10);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || text.front() == '-')
        throw ValidationError(std::string(kSeedEnv) + " is not a non-negative integer: " + text);
    return v;
}

} // namespace

void RunConfig::validate() const
{
    if (!(tolerance > 0.0) || !std::isfinite(tolerance)) throw ValidationError("--tolerance must be positive");
    if (trials < 1) throw ValidationError("--trials must be at least 1");
}

Tolerances RunConfig::tolerances() const
{
    Tolerances t;
    t.projection = tolerance;
    return t;
}

ViolationReport ViolationReport::make(std::string id, double value, std::optional<Json> witness)
{
    ViolationReport r;
    r.scenario_id = std::move(id);
    r.value = value;
    r.violated = value > r.classical_bound;
    r.witness = std::move(witness);
    return r;
}

Json ViolationReport::to_json() const
{
    Json j{{"schema", kSchemaVersion},
           {"scenario_id", scenario_id},
           {"value", value},
           {"classical_bound", classical_bound},
           {"violated", violated}};
    j["witness"] = witness ? *witness : Json(nullptr);
    return j;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"contextia: KCBS pentagon inequality toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string format = "json";
    app.add_option("--tolerance", cfg.tolerance, "Projection tolerance (default 1e-10)");
    auto* seed_opt = app.add_option("--seed", cfg.seed, "Random seed (falls back to $CONTEXTIA_SEED)");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output", cfg.output_path, "Write output to this file instead of stdout");

    std::string graph_file;
    auto* bound = app.add_subcommand("bound", "Noncontextual bound of an exclusivity graph");
    bound->add_option("graph_file", graph_file, "Graph JSON")->required();

    KcbsOptions kcbs_opt;
    auto* kcbs = app.add_subcommand("kcbs", "Quantum violations of the pentagon bound");
    kcbs->add_option("--epsilon", kcbs_opt.epsilon, "Mixture parameter in (0, sqrt(5)-2)");
    kcbs->add_option("--multiplicity", kcbs_opt.multiplicity, "Block multiplicity m (dimension 3m)");
    kcbs->add_option("--conjugate-seed", kcbs_opt.conjugate_seed, "Seed of the conjugating unitary");
    kcbs->add_option("--scenario-out", kcbs_opt.scenario_out, "Write the dim-3 pentagon scenario JSON here");

    TracialOptions tracial_opt;
    auto* tracial = app.add_subcommand("tracial", "Normalized-trace campaigns");
    tracial->add_option("--dims", tracial_opt.dims, "Dimensions (2..8)")->delimiter(',');
    tracial->add_option("--trials", tracial_opt.trials, "Scenarios per dimension");
    tracial->add_option("--pairs", tracial_opt.pairs, "Projection pairs per dimension (default: trials)");
    tracial->add_flag("--records", tracial_opt.records, "Emit one record per scenario");

    HvmOptions hvm_opt;
    auto* hvm = app.add_subcommand("hvm", "Hidden-variable model fuzzing or evaluation");
    hvm->add_option("--graph", hvm_opt.graph_file, "Graph JSON (default: cycle)");
    hvm->add_option("--cycle", hvm_opt.cycle, "Cycle length when no graph is given");
    hvm->add_option("--model", hvm_opt.model_file, "Evaluate a model JSON instead of fuzzing");
    hvm->add_option("--trials", hvm_opt.trials, "Random models");

    ScanOptions scan_opt;
    auto* scan = app.add_subcommand("scan", "Umbrella-family angle scan");
    scan->add_option("--theta-range", scan_opt.range, "a b with 0 < a < b < pi/2")->expected(2)->required();
    scan->add_option("--steps", scan_opt.steps, "Grid points (>= 2)");

    std::string scenario_file;
    auto* verify = app.add_subcommand("verify", "Check a scenario JSON file");
    verify->add_option("scenario_file", scenario_file, "Scenario JSON")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (seed_opt->count() == 0) {
            if (const char* env = std::getenv(kSeedEnv))
                cfg.seed = parse_seed(env);
            else
                cfg.seed = kDefaultSeed;
        }
        cfg.format = format == "csv" ? Format::csv : Format::json;
        if (*tracial) cfg.trials = tracial_opt.trials;
        if (*hvm) cfg.trials = hvm_opt.trials;
        cfg.validate();

        std::ofstream file;
        if (!cfg.output_path.empty()) {
            file.open(cfg.output_path);
            if (!file) {
                err << "cannot open " << cfg.output_path << " for writing\n";
                return kExitUsage;
            }
        }
        std::ostream& sink = cfg.output_path.empty() ? out : file;

        if (*bound) return cmd_bound(cfg, graph_file, sink);
        if (*kcbs) return cmd_kcbs(cfg, kcbs_opt, sink, err);
        if (*tracial) return cmd_tracial(cfg, tracial_opt, sink, err);
        if (*hvm) return cmd_hvm(cfg, hvm_opt, sink, err);
        if (*scan) return cmd_scan(cfg, app.count("--format") > 0 && cfg.format == Format::json, scan_opt, sink, err);
        if (*verify) return cmd_verify(cfg, scenario_file, sink, err);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const CapacityError& e) {
        err << "capacity: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConstructionError& e) {
        err << "construction: " << e.what() << '\n';
        return kExitPropertyFailure;
    }
    return kExitUsage;
}

} // namespace contextia::cli
