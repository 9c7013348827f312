#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "chase/engine.hpp"
#include "chase/experiments.hpp"
#include "chase/multigraph.hpp"
#include "chase/percolation.hpp"
#include "chase/theory.hpp"

using nlohmann::json;
using namespace chase;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSuiteFailure = 1;
constexpr int kExitUsage = 2;

json json_real(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y%m%d%H%M%S", &tm);
    return buf;
}

std::filesystem::path artifact_path(const std::string& out_dir, const std::string& sub,
                                    std::uint64_t seed, const std::string& ext) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);  // unwritable paths surface on open
    std::ostringstream name;
    name << sub << "-" << timestamp_utc() << "-" << seed << "." << ext;
    return std::filesystem::path(out_dir) / name.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write output file: " + path.string());
    out << content;
    if (!out.good()) throw std::runtime_error("write failed: " + path.string());
}

std::vector<double> parse_real_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    return out;
}

json estimate_json(const Estimate& e) {
    return json{{"mean", e.mean}, {"stderr", e.se}, {"ci95", {e.lo, e.hi}},
                {"count", e.count}};
}

// Flat key=value config support: expand "--config FILE" into "--key=value"
// tokens placed before the explicit flags, so TakeLast parsing lets the
// command line override the file.
std::vector<std::string> expand_config_args(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config_path = args[i + 1];
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
            break;
        }
    }
    if (config_path.empty() || args.empty()) return args;

    std::ifstream in(config_path);
    if (!in) throw std::invalid_argument("cannot open config file: " + config_path);
    std::vector<std::string> expanded;
    expanded.push_back(args.front());  // the subcommand
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config lines must be key=value: " + line);
        expanded.push_back("--" + line.substr(0, eq) + "=" + line.substr(eq + 1));
    }
    expanded.insert(expanded.end(), args.begin() + 1, args.end());
    return expanded;
}

// ---------------------------------------------------------------------------

struct TheoryArgs {
    std::string model_spec;
    double lambda = 0.0;
    bool has_lambda = false;
};

int cmd_theory(const TheoryArgs& args) {
    const DegreeModel model = DegreeModel::parse(args.model_spec);
    const TheoryReport rep = theory_report(model);
    json out{{"model", model.to_string()},
             {"branching_ratio", json_real(rep.branching_ratio)},
             {"molloy_reed", json_real(rep.molloy_reed)}};
    out["lambda_crit"] = rep.lambda_crit ? json(*rep.lambda_crit) : json();
    out["range_const"] = rep.range_const ? json(*rep.range_const) : json();
    if (!rep.note.empty()) out["note"] = rep.note;
    if (args.has_lambda) {
        const double l = args.lambda;
        if (!(l > 0.0)) throw std::invalid_argument("lambda must be positive");
        json extra{{"lambda", l}};
        if (l < 1.0) {
            extra["c_lambda"] = c_lambda(l);
            json table = json::array();
            for (int k = 1; k <= 20; ++k) table.push_back(survival_bound(l, k));
            extra["survival_bound"] = table;
        } else {
            extra["survival_bound_note"] = "survival bound needs lambda < 1";
        }
        json open = json::array();
        for (int k = 0; k <= 10; ++k) open.push_back(open_probability(k, l));
        extra["open_probability"] = open;
        out["at_lambda"] = extra;
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

struct SimulateArgs {
    std::string model_spec = "regular:3";
    int n = 100;
    double lambda = 1.0;
    std::uint64_t seed = 0;
    std::string engine = "quenched";
    bool full = false;
    bool trace = false;
};

int cmd_simulate(const SimulateArgs& args) {
    if (args.engine != "quenched" && args.engine != "gillespie")
        throw std::invalid_argument("engine must be quenched or gillespie");
    const DegreeModel model = DegreeModel::parse(args.model_spec);
    Rng stream = make_stream(args.seed);
    const MultiGraph g = MultiGraph::sample(model, args.n, stream);

    std::vector<TraceEvent> trace;
    Outcome out;
    if (args.engine == "quenched") {
        const PassageTimes pt = PassageTimes::draw(g, args.lambda, stream);
        out = run_quenched(g, pt, args.trace ? &trace : nullptr);
    } else {
        out = run_gillespie(g, args.lambda, stream, args.trace ? &trace : nullptr);
    }
    if (args.trace) {
        for (const TraceEvent& ev : trace) {
            std::fprintf(stderr, "t=%.10g v=%d color=%c via=%d\n", ev.t, ev.v, ev.color,
                         ev.via_edge);
        }
    }

    json doc{{"model", model.to_string()},
             {"n", args.n},
             {"lambda", args.lambda},
             {"seed", args.seed},
             {"engine", args.engine},
             {"range", out.range()},
             {"fixation_time", out.fixation_time},
             {"edges", g.edge_count()},
             {"parity", g.parity_bit()}};
    if (args.full) {
        json reds = json::array(), blues = json::array();
        for (int v = 0; v <= g.vertex_count(); ++v) {
            reds.push_back(std::isfinite(out.red_time[v]) ? json(out.red_time[v]) : json());
            blues.push_back(std::isfinite(out.blue_time[v]) ? json(out.blue_time[v]) : json());
        }
        doc["red_time"] = reds;
        doc["blue_time"] = blues;
    }
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
}

struct SampleArgs {
    std::string model_spec = "regular:3";
    int n = 100;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
};

int cmd_sample(const SampleArgs& args) {
    const DegreeModel model = DegreeModel::parse(args.model_spec);
    Rng stream = make_stream(args.seed);
    const MultiGraph g = MultiGraph::sample(model, args.n, stream);
    const auto path = artifact_path(args.out_dir, "sample", args.seed, "txt");
    write_file(path, g.serialize());
    json doc{{"model", model.to_string()}, {"n", args.n},  {"seed", args.seed},
             {"edges", g.edge_count()},    {"parity", g.parity_bit()},
             {"file", path.string()}};
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
}

struct PercolateArgs {
    std::string model_spec = "regular:3";
    int n = 1000;
    double lambda = 1.0;
    long long replicas = 10;
    std::uint64_t seed = 0;
    double epsilon = 0.3;
    std::string out_dir = ".";
};

int cmd_percolate(const PercolateArgs& args) {
    if (args.replicas < 1) throw std::invalid_argument("need at least one replica");
    const DegreeModel model = DegreeModel::parse(args.model_spec);

    std::ostringstream csv;
    csv << "# chase-escape percolate\n";
    csv << "# model=" << model.to_string() << " n=" << args.n << " lambda=" << args.lambda
        << " replicas=" << args.replicas << " epsilon=" << args.epsilon
        << " master_seed=" << args.seed << "\n";
    csv << perc_csv_header() << "\n";

    long long giant_hits = 0, root_open_hits = 0;
    std::vector<double> ratios;
    ratios.reserve(args.replicas);
    json single;  // full report object in single-run mode
    for (long long r = 0; r < args.replicas; ++r) {
        const std::uint64_t replica_seed = derive_seed(args.seed, r);
        Rng stream(replica_seed);
        const MultiGraph g = MultiGraph::sample(model, args.n, stream);
        const OpenMask mask = mark_open_direct(g, args.lambda, stream);
        const PercReport rep = perc_report(g, mask, replica_seed);
        csv << perc_csv_row(rep) << "\n";
        giant_hits += giant_check({rep.j_n, rep.s_n, rep.m_n}, args.epsilon) ? 1 : 0;
        root_open_hits += rep.root_open ? 1 : 0;
        ratios.push_back(rep.ratio);
        if (args.replicas == 1)
            single = json{{"n", rep.n},
                          {"lambda", rep.lambda},
                          {"seed", rep.seed},
                          {"j_n", rep.j_n},
                          {"S_n", rep.s_n},
                          {"M_n", rep.m_n},
                          {"E_n", rep.e_n},
                          {"ratio", rep.ratio},
                          {"largest_open_component", rep.largest_open_component},
                          {"root_open_component", rep.root_open_component},
                          {"root_open", rep.root_open},
                          {"degenerate", rep.degenerate}};
    }
    const auto csv_path = artifact_path(args.out_dir, "percolate", args.seed, "csv");
    write_file(csv_path, csv.str());

    json doc{{"config",
              {{"model", model.to_string()},
               {"n", args.n},
               {"lambda", args.lambda},
               {"replicas", args.replicas},
               {"epsilon", args.epsilon},
               {"master_seed", args.seed}}},
             {"giant_frac", estimate_json(estimate_proportion(giant_hits, args.replicas))},
             {"root_open_frac",
              estimate_json(estimate_proportion(root_open_hits, args.replicas))},
             {"ratio", estimate_json(estimate_from_samples(ratios))},
             {"csv", csv_path.string()}};
    if (args.replicas == 1) doc["report"] = single;
    const auto json_path = artifact_path(args.out_dir, "percolate", args.seed, "json");
    write_file(json_path, doc.dump(2) + "\n");
    std::cout << "percolate n=" << args.n << " lambda=" << args.lambda
              << " replicas=" << args.replicas << " giant_frac="
              << static_cast<double>(giant_hits) / static_cast<double>(args.replicas)
              << " -> " << csv_path.string() << "\n";
    return kExitOk;
}

struct SweepArgs {
    std::string model_spec = "regular:3";
    std::string lambda_grid;
    std::string n_list;
    long long replicas = 100;
    double delta = 0.1;
    double epsilon = 0.3;
    std::uint64_t seed = 0;
    std::string mode = "range";
    int workers = 0;
    bool fixed_graph = false;
    long long budget_cap = 10'000'000'000LL;
    std::string out_dir = ".";
};

json sweep_json(const SweepResult& res) {
    const SweepConfig& cfg = res.config;
    json rows = json::array();
    for (const SweepRow& row : res.rows) {
        json r{{"lambda", row.lambda},
               {"n", row.n},
               {"mean_range", estimate_json(row.mean_range)},
               {"p_exceed", estimate_json(row.p_exceed)}};
        if (row.perc) {
            r["percolation"] = json{{"ratio", estimate_json(row.perc->ratio)},
                                    {"giant_frac", estimate_json(row.perc->giant_pass)},
                                    {"largest_frac", estimate_json(row.perc->largest_frac)},
                                    {"root_open_frac", estimate_json(row.perc->root_open)},
                                    {"en_frac", estimate_json(row.perc->en_frac)}};
        }
        rows.push_back(r);
    }
    return json{{"config",
                 {{"model", cfg.model.to_string()},
                  {"mode", to_string(cfg.mode)},
                  {"lambda_grid", cfg.lambda_grid},
                  {"n_list", cfg.n_list},
                  {"replicas", cfg.replicas},
                  {"delta", cfg.delta},
                  {"epsilon", cfg.epsilon},
                  {"master_seed", cfg.master_seed},
                  {"fixed_graph", cfg.fixed_graph}}},
                {"rows", rows}};
}

int cmd_sweep(const SweepArgs& args) {
    SweepConfig cfg;
    cfg.model = DegreeModel::parse(args.model_spec);
    cfg.lambda_grid = parse_real_list(args.lambda_grid);
    cfg.n_list = parse_int_list(args.n_list);
    cfg.replicas = args.replicas;
    cfg.delta = args.delta;
    cfg.epsilon = args.epsilon;
    cfg.master_seed = args.seed;
    cfg.mode = parse_sweep_mode(args.mode);
    cfg.workers = args.workers;
    cfg.fixed_graph = args.fixed_graph;
    cfg.budget_cap = args.budget_cap;

    const SweepResult res = sweep(cfg);
    const auto csv_path = artifact_path(args.out_dir, "sweep", args.seed, "csv");
    write_file(csv_path, sweep_csv(res));
    const auto json_path = artifact_path(args.out_dir, "sweep", args.seed, "json");
    write_file(json_path, sweep_json(res).dump(2) + "\n");
    for (const SweepRow& row : res.rows)
        std::cout << "sweep lambda=" << row.lambda << " n=" << row.n
                  << " mean_range=" << row.mean_range.mean
                  << " p_exceed=" << row.p_exceed.mean << "\n";
    std::cout << "wrote " << csv_path.string() << " and " << json_path.string() << "\n";
    return kExitOk;
}

struct ValidateArgs {
    std::vector<std::string> suites;
    long long n = 0;
    double lambda = 0.0;
    long long replicas = 0;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
};

int cmd_validate(const ValidateArgs& args) {
    std::vector<std::string> suites = args.suites;
    if (suites.empty()) {
        // all statistical suites; "bounds" is heavy and runs only by name
        for (const std::string& name : suite_names())
            if (name != "bounds") suites.push_back(name);
    }
    SuiteParams params;
    params.n = args.n;
    params.lambda = args.lambda;
    params.replicas = args.replicas;
    params.seed = args.seed;

    json verdicts = json::array();
    bool all_pass = true;
    for (const std::string& name : suites) {
        const SuiteVerdict v = property_suite(name, params);
        all_pass = all_pass && v.pass;
        json stats;
        for (const auto& [key, value] : v.stats) stats[key] = json_real(value);
        verdicts.push_back(json{{"suite", v.name}, {"pass", v.pass}, {"stats", stats}});
        std::cout << (v.pass ? "PASS" : "FAIL") << " " << v.name;
        for (const auto& [key, value] : v.stats) std::cout << " " << key << "=" << value;
        std::cout << "\n";
    }
    json doc{{"config",
              {{"suites", suites},
               {"n", args.n},
               {"lambda", args.lambda},
               {"replicas", args.replicas},
               {"master_seed", args.seed}}},
             {"verdicts", verdicts},
             {"all_pass", all_pass}};
    const auto json_path = artifact_path(args.out_dir, "validate", args.seed, "json");
    write_file(json_path, doc.dump(2) + "\n");
    std::cout << (all_pass ? "ALL PASS" : "FAILURES PRESENT") << " -> "
              << json_path.string() << "\n";
    return all_pass ? kExitOk : kExitSuiteFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"chase-escape on configuration-model random graphs"};
    app.require_subcommand(1);
    // config-file values are injected before explicit flags; TakeLast makes
    // the command line win
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    TheoryArgs theory_args;
    CLI::App* theory = app.add_subcommand(
        "theory", "closed-form quantities for a degree model");
    theory->add_option("model", theory_args.model_spec, "model spec, e.g. regular:3")
        ->required();
    CLI::Option* lam =
        theory->add_option("--lambda", theory_args.lambda, "evaluate rate-dependent tables");

    SimulateArgs sim_args;
    CLI::App* simulate =
        app.add_subcommand("simulate", "one chase-escape run on a sampled graph");
    simulate->add_option("--model", sim_args.model_spec, "degree model spec");
    simulate->add_option("--n", sim_args.n, "non-seed vertex count")->check(CLI::PositiveNumber);
    simulate->add_option("--lambda", sim_args.lambda, "red spread rate")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim_args.seed, "master seed");
    simulate->add_option("--engine", sim_args.engine, "quenched or gillespie");
    simulate->add_flag("--full", sim_args.full, "include per-vertex coloring times");
    simulate->add_flag("--trace", sim_args.trace, "print the event log to stderr");
    std::string cfg_sim;
    simulate->add_option("--config", cfg_sim, "flat key=value config file");

    SampleArgs sample_args;
    CLI::App* sample = app.add_subcommand("sample", "sample a graph and write the edge list");
    sample->add_option("--model", sample_args.model_spec, "degree model spec");
    sample->add_option("--n", sample_args.n, "non-seed vertex count")
        ->check(CLI::PositiveNumber);
    sample->add_option("--seed", sample_args.seed, "master seed");
    sample->add_option("--out", sample_args.out_dir, "output directory");
    std::string cfg_sample;
    sample->add_option("--config", cfg_sample, "flat key=value config file");

    PercolateArgs perc_args;
    CLI::App* percolate =
        app.add_subcommand("percolate", "open-vertex percolation replicas");
    percolate->add_option("--model", perc_args.model_spec, "degree model spec");
    percolate->add_option("--n", perc_args.n, "non-seed vertex count")
        ->check(CLI::PositiveNumber);
    percolate->add_option("--lambda", perc_args.lambda, "red spread rate")
        ->check(CLI::PositiveNumber);
    percolate->add_option("--replicas", perc_args.replicas, "replica count");
    percolate->add_option("--seed", perc_args.seed, "master seed");
    percolate->add_option("--epsilon", perc_args.epsilon, "giant_check threshold");
    percolate->add_option("--out", perc_args.out_dir, "output directory");
    std::string cfg_perc;
    percolate->add_option("--config", cfg_perc, "flat key=value config file");

    SweepArgs sweep_args;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo grid over (lambda, n)");
    sweep_cmd->add_option("--model", sweep_args.model_spec, "degree model spec");
    sweep_cmd->add_option("--lambda-grid", sweep_args.lambda_grid, "comma list of lambdas")
        ->required();
    sweep_cmd->add_option("--n-list", sweep_args.n_list, "comma list of sizes")->required();
    sweep_cmd->add_option("--replicas", sweep_args.replicas, "replicas per grid point");
    sweep_cmd->add_option("--delta", sweep_args.delta, "threshold for range > delta*n");
    sweep_cmd->add_option("--epsilon", sweep_args.epsilon, "giant_check threshold");
    sweep_cmd->add_option("--seed", sweep_args.seed, "master seed");
    sweep_cmd->add_option("--mode", sweep_args.mode, "range|percolation|path|tree");
    sweep_cmd->add_option("--workers", sweep_args.workers, "0 = hardware concurrency");
    sweep_cmd->add_flag("--fixed-graph", sweep_args.fixed_graph,
                        "one shared graph per grid point");
    sweep_cmd->add_option("--budget-cap", sweep_args.budget_cap,
                          "max total vertex-replica product");
    sweep_cmd->add_option("--out", sweep_args.out_dir, "output directory");
    std::string cfg_sweep;
    sweep_cmd->add_option("--config", cfg_sweep, "flat key=value config file");

    ValidateArgs val_args;
    CLI::App* validate = app.add_subcommand("validate", "statistical property suites");
    validate->add_option("suites", val_args.suites,
                         "suite names (default: all statistical suites)");
    validate->add_option("--n", val_args.n, "override suite size parameter");
    validate->add_option("--lambda", val_args.lambda, "override suite lambda");
    validate->add_option("--replicas", val_args.replicas, "override suite replicas");
    validate->add_option("--seed", val_args.seed, "suite master seed");
    validate->add_option("--out", val_args.out_dir, "output directory");
    std::string cfg_val;
    validate->add_option("--config", cfg_val, "flat key=value config file");

    try {
        std::vector<std::string> args = expand_config_args(argc, argv);
        std::reverse(args.begin(), args.end());  // CLI11 vector parse is back-to-front
        app.parse(std::move(args));
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (theory->parsed()) {
            theory_args.has_lambda = lam->count() > 0;
            return cmd_theory(theory_args);
        }
        if (simulate->parsed()) return cmd_simulate(sim_args);
        if (sample->parsed()) return cmd_sample(sample_args);
        if (percolate->parsed()) return cmd_percolate(perc_args);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep_args);
        if (validate->parsed()) return cmd_validate(val_args);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
