#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chase/degree_model.hpp"
#include "chase/percolation.hpp"

namespace chase {

struct Estimate {
    double mean = 0.0;
    double se = 0.0;  // standard error of the mean
    double lo = 0.0;  // 95% confidence interval
    double hi = 0.0;
    long long count = 0;
};

Estimate estimate_from_samples(const std::vector<double>& xs);
Estimate estimate_proportion(long long successes, long long trials);

enum class SweepMode { Range, Percolation, Path, Tree };

std::string to_string(SweepMode mode);
SweepMode parse_sweep_mode(const std::string& name);

// One Monte Carlo grid job. In range and percolation modes n is the vertex
// count; in path mode n is the path length and in tree mode the tree depth
// (p_exceed then reports the probability that red reaches that depth).
struct SweepConfig {
    DegreeModel model = DegreeModel::regular(3);
    std::vector<double> lambda_grid;
    std::vector<int> n_list;
    long long replicas = 2;
    double delta = 0.1;            // threshold for the event range > delta*n
    double epsilon = 0.3;          // giant_check threshold (percolation mode)
    std::uint64_t master_seed = 0;
    SweepMode mode = SweepMode::Range;
    int workers = 0;               // 0 = hardware concurrency
    bool fixed_graph = false;      // one shared graph per grid point
    long long budget_cap = 10'000'000'000LL;  // sum over cells of n*replicas
};

struct PercAggregates {
    Estimate ratio;
    Estimate giant_pass;    // giant_check(eps) frequency
    Estimate largest_frac;  // largest open component / n
    Estimate root_open;
    Estimate en_frac;       // E_n / n
};

struct SweepRow {
    double lambda = 0.0;
    int n = 0;
    Estimate mean_range;
    Estimate p_exceed;
    std::optional<PercAggregates> perc;
};

struct SweepResult {
    SweepConfig config;
    std::vector<SweepRow> rows;
};

// Runs the grid. Replica r of cell (li, ni) draws its rng stream from
// derive_seed(master_seed, 0, li, ni, r); deterministic for any worker
// count. Refuses configs whose total vertex-replica product exceeds
// budget_cap.
SweepResult sweep(const SweepConfig& config);

// Deterministic CSV rendering (config echo lines, header, one row per grid
// point). Scheduling fields are not echoed, so re-runs with a different
// worker count are byte-identical.
std::string sweep_csv(const SweepResult& result);

// Monte Carlo estimates of P(A_1)..P(A_k_max) on the path, binomial errors.
std::vector<Estimate> estimate_path_survival(double lambda, int k_max,
                                             long long replicas, std::uint64_t seed);

struct BoundCell {
    double lambda = 0.0;
    int n = 0;
    Estimate mean_range;
    double bound = 0.0;
    bool checked = false;  // lambda <= critical value: the bound applies
    bool pass = true;
};

struct BoundReport {
    double lambda_c = 0.0;
    double range_c = 0.0;
    std::vector<BoundCell> cells;
    bool all_pass = true;
};

// Checks mean range + 4 se < range_const for every subcritical cell; cells
// above the critical value record the growth profile instead.
BoundReport validate_bounds(const DegreeModel& model, const std::vector<double>& lambdas,
                            const std::vector<int>& n_list, long long replicas,
                            std::uint64_t seed, int workers = 0);

// Overrides for a named statistical suite; zero fields keep the suite's
// frozen defaults.
struct SuiteParams {
    long long n = 0;
    double lambda = 0.0;
    long long replicas = 0;
    std::uint64_t seed = 0;
};

struct SuiteVerdict {
    std::string name;
    bool pass = false;
    std::vector<std::pair<std::string, double>> stats;
    std::string note;
};

const std::vector<std::string>& suite_names();
SuiteVerdict property_suite(const std::string& name, const SuiteParams& params);

} // namespace chase
