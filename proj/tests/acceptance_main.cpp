// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Run with no arguments for all criteria, or pass criterion numbers.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "chase/engine.hpp"
#include "chase/experiments.hpp"
#include "chase/multigraph.hpp"
#include "chase/percolation.hpp"
#include "chase/theory.hpp"
#include "helpers.hpp"

using namespace chase;

namespace {

constexpr std::uint64_t kSeed = 20260811;

bool criterion_1_critical_identity() {
    for (const double a : {1.5, 2.0, 3.0, 10.0, 1e3}) {
        const double L = lambda_crit(a);
        const double residual = 4.0 * a * L / ((1.0 + L) * (1.0 + L)) - 1.0;
        if (std::abs(residual) > 1e-12) {
            std::printf("  residual %.3e at a=%g\n", residual, a);
            return false;
        }
    }
    return true;
}

bool criterion_2_open_probability() {
    for (const double l : {0.1, 0.5, 1.0, 2.0, 10.0})
        for (int k = 0; k <= 25; ++k) {
            const double diff =
                std::abs(open_probability_series(k, l) - open_probability_quadrature(k, l));
            if (diff > 1e-9) {
                std::printf("  series/quadrature gap %.3e at k=%d lambda=%g\n", diff, k, l);
                return false;
            }
        }
    if (std::abs(open_probability(1, 1.0) - 0.5) > 1e-12) return false;
    if (std::abs(open_probability(2, 1.0) - 1.0 / 6.0) > 1e-12) return false;
    Rng rng = make_stream(kSeed, 2);
    for (int k = 1; k <= 8; ++k) {
        const auto [p_hat, se] = chase::test::mc_open_probability(k, 1.0, 1000000, rng);
        const double p = open_probability(k, 1.0);
        if (std::abs(p - p_hat) > 4.0 * se) {
            std::printf("  MC gap at k=%d: closed=%.6g mc=%.6g se=%.2e\n", k, p, p_hat, se);
            return false;
        }
    }
    return true;
}

bool criterion_3_path_survival() {
    for (const double l : {0.5, 1.0, 2.0}) {
        const auto est = estimate_path_survival(l, 2, 100000, derive_seed(kSeed, 3, 0));
        const double truth = l / (1.0 + l);
        if (std::abs(est[1].mean - truth) > 4.0 * est[1].se) {
            std::printf("  A_2 gap at lambda=%g: %.4g vs %.4g\n", l, est[1].mean, truth);
            return false;
        }
    }
    for (const double l : {0.3, 0.5, 0.8}) {
        const auto est = estimate_path_survival(l, 10, 100000, derive_seed(kSeed, 3, 1));
        for (int k = 1; k <= 10; ++k) {
            if (est[k - 1].mean > survival_bound(l, k)) {
                std::printf("  bound broken at lambda=%g k=%d: %.4g > %.4g\n", l, k,
                            est[k - 1].mean, survival_bound(l, k));
                return false;
            }
        }
    }
    return true;
}

bool criterion_4_matching_uniformity() {
    SuiteParams p;
    p.seed = derive_seed(kSeed, 4);
    const SuiteVerdict v = property_suite("matching_uniformity", p);
    if (!v.pass)
        std::printf("  self-loop frequency %.4f outside 1/3 +- 0.01\n", v.stats[0].second);
    return v.pass;
}

bool criterion_5_engine_equivalence() {
    SuiteParams p;
    p.seed = derive_seed(kSeed, 5);
    const SuiteVerdict v = property_suite("engine_equivalence", p);
    for (const auto& [key, value] : v.stats) std::printf("  %s=%.4g\n", key.c_str(), value);
    return v.pass;
}

bool criterion_6_coupling() {
    SuiteParams p;
    p.seed = derive_seed(kSeed, 6);
    const SuiteVerdict v = property_suite("coupling", p);
    for (const auto& [key, value] : v.stats) std::printf("  %s=%g\n", key.c_str(), value);
    return v.pass;
}

bool criterion_7_jprr_triples() {
    const auto same = [](const JprrStats& st, long long j, long long s, long long m) {
        return st.j_n == j && st.s_n == s && st.m_n == m;
    };
    return same(jprr_stats({1, 1, 3}), 3, 3, 5) &&
           same(jprr_stats({3, 3, 3, 3}), 1, 12, 12) &&
           same(jprr_stats({2, 2, 2}), 3, 2, 0);
}

bool criterion_8_expected_range_bound() {
    const DegreeModel model = DegreeModel::regular(3);
    const double crit = lambda_crit(branching_ratio(model));
    const BoundReport rep = validate_bounds(model, {0.05, crit}, {500, 1000, 2000, 5000},
                                            2000, derive_seed(kSeed, 8));
    std::printf("  C=%.6g lambda_crit=%.6g\n", rep.range_c, rep.lambda_c);
    for (const BoundCell& cell : rep.cells)
        std::printf("  lambda=%.6g n=%d mean=%.4g (+4se %.4g) %s\n", cell.lambda, cell.n,
                    cell.mean_range.mean, cell.mean_range.mean + 4.0 * cell.mean_range.se,
                    cell.pass ? "ok" : "VIOLATION");
    return rep.all_pass;
}

bool criterion_9_divergent_direction() {
    SweepConfig cfg;
    cfg.model = DegreeModel::regular(3);
    cfg.lambda_grid = {1.0};
    cfg.n_list = {500, 1000, 2000};
    cfg.replicas = 2000;
    cfg.delta = 0.1;
    cfg.master_seed = derive_seed(kSeed, 9);
    const SweepResult res = sweep(cfg);
    for (const SweepRow& row : res.rows)
        std::printf("  n=%d mean=%.4g ci=[%.4g, %.4g]\n", row.n, row.mean_range.mean,
                    row.mean_range.lo, row.mean_range.hi);
    const bool increasing = res.rows[0].mean_range.mean < res.rows[1].mean_range.mean &&
                            res.rows[1].mean_range.mean < res.rows[2].mean_range.mean;
    const bool separated = res.rows[0].mean_range.hi < res.rows[2].mean_range.lo;
    return increasing && separated;
}

bool criterion_10_percolation_giant() {
    const DegreeModel model = DegreeModel::regular(3);
    const int n = 10000, replicas = 50;
    const double lambda = 20.0, eps = 0.3;
    int giant_hits = 0, large_hits = 0;
    for (int r = 0; r < replicas; ++r) {
        Rng stream = make_stream(derive_seed(kSeed, 10), r);
        const MultiGraph g = MultiGraph::sample(model, n, stream);
        const PassageTimes pt = PassageTimes::draw(g, lambda, stream);
        const OpenMask mask = mark_open(g, pt);
        const PercReport rep = perc_report(g, mask, 0);
        giant_hits += giant_check({rep.j_n, rep.s_n, rep.m_n}, eps) ? 1 : 0;
        large_hits += rep.largest_open_component > 0.3 * n ? 1 : 0;
    }
    std::printf("  giant_check %d/%d, largest>0.3n %d/%d\n", giant_hits, replicas,
                large_hits, replicas);
    return giant_hits >= 48 && large_hits >= 48;  // >= 95% of 50
}

bool criterion_11_reproducibility() {
    SweepConfig cfg;
    cfg.model = DegreeModel::regular(3);
    cfg.lambda_grid = {0.5, 1.0};
    cfg.n_list = {200, 400};
    cfg.replicas = 200;
    cfg.delta = 0.1;
    cfg.master_seed = derive_seed(kSeed, 11);
    cfg.workers = 1;
    const std::string one = sweep_csv(sweep(cfg));
    cfg.workers = 2;
    const std::string two = sweep_csv(sweep(cfg));
    cfg.workers = 5;
    const std::string five = sweep_csv(sweep(cfg));
    return one == two && one == five;
}

struct Criterion {
    int index;
    const char* description;
    bool (*run)();
};

const Criterion kCriteria[] = {
    {1, "critical-value identity 4a*L/(1+L)^2 = 1", criterion_1_critical_identity},
    {2, "open-probability closed form vs quadrature vs Monte Carlo",
     criterion_2_open_probability},
    {3, "path survival law and analytic bound", criterion_3_path_survival},
    {4, "half-edge matching uniformity", criterion_4_matching_uniformity},
    {5, "quenched vs Gillespie range distributions", criterion_5_engine_equivalence},
    {6, "open-component coupling under shared randomness", criterion_6_coupling},
    {7, "order-statistic triples", criterion_7_jprr_triples},
    {8, "uniform expected-range bound below the critical rate",
     criterion_8_expected_range_bound},
    {9, "expected-range growth above the critical rate", criterion_9_divergent_direction},
    {10, "giant open component in the strong-rate regime", criterion_10_percolation_giant},
    {11, "byte-identical sweeps across worker counts", criterion_11_reproducibility},
};

} // namespace

int main(int argc, char** argv) {
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

    int failures = 0;
    for (const Criterion& c : kCriteria) {
        if (!wanted.empty() &&
            std::find(wanted.begin(), wanted.end(), c.index) == wanted.end())
            continue;
        const auto start = std::chrono::steady_clock::now();
        const bool ok = c.run();
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %d: %s (%.1fs)\n", ok ? "PASS" : "FAIL", c.index,
                    c.description, secs);
        failures += ok ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
