#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <queue>
#include <stdexcept>

#include "chase/engine.hpp"
#include "chase/theory.hpp"

using namespace chase;

namespace {

// ever_red must induce a connected subgraph containing the root; every red
// vertex must eventually be blue with a strictly later time
void check_outcome_invariants(const MultiGraph& g, const Outcome& out) {
    REQUIRE(out.red_time[1] == 0.0);
    REQUIRE(out.blue_time[0] == 0.0);
    std::vector<char> is_red(g.vertex_count() + 1, 0);
    for (int v : out.ever_red) is_red[v] = 1;
    for (int v = 1; v <= g.vertex_count(); ++v) {
        if (std::isfinite(out.blue_time[v])) {
            REQUIRE(std::isfinite(out.red_time[v]));
            REQUIRE(out.red_time[v] < out.blue_time[v]);
        }
        if (is_red[v]) REQUIRE(std::isfinite(out.blue_time[v]));  // fixation
    }
    // BFS inside ever_red from the root
    std::vector<char> seen(g.vertex_count() + 1, 0);
    std::queue<int> q;
    q.push(1);
    seen[1] = 1;
    int reached = 0;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        ++reached;
        for (const AdjEntry& e : g.neighbors(v)) {
            const int w = static_cast<int>(e.other);
            if (w == 0 || seen[w] || !is_red[w]) continue;
            seen[w] = 1;
            q.push(w);
        }
    }
    REQUIRE(reached == out.range());
    double max_blue = 0.0;
    for (int v : out.ever_red) max_blue = std::max(max_blue, out.blue_time[v]);
    REQUIRE(out.fixation_time == max_blue);
}

} // namespace

TEST_CASE("passage times have the declared marginals") {
    Rng rng = make_stream(11);
    const MultiGraph g = MultiGraph::sample(DegreeModel::regular(3), 30000, rng);
    const PassageTimes pt = PassageTimes::draw(g, 2.0, rng);
    double sum = 0.0;
    const int dids = 2 * g.edge_count();
    for (int d = 0; d < dids; ++d) {
        REQUIRE(pt.red(d) > 0.0);
        REQUIRE(pt.blue(d) > 0.0);
        sum += pt.red(d);
    }
    const double mean = sum / dids;
    const double se = 0.5 / std::sqrt(static_cast<double>(dids));
    CHECK(std::abs(mean - 0.5) < 3.0 * se);
}

TEST_CASE("per-vertex summaries recompute from the per-direction fields") {
    Rng rng = make_stream(12);
    const MultiGraph g = MultiGraph::sample(DegreeModel::poisson(2.5), 300, rng);
    const PassageTimes pt = PassageTimes::draw(g, 1.2, rng);
    for (int v = 1; v <= g.vertex_count(); ++v) {
        double mx = 0.0, mn = std::numeric_limits<double>::infinity();
        for (const AdjEntry& e : g.neighbors(v)) {
            if (g.is_self_loop(e.edge_id)) continue;
            if (static_cast<int>(e.edge_id) != g.seed_edge_id())
                mx = std::max(mx, pt.red(g.directed_index(e.edge_id, v)));
            mn = std::min(mn, pt.blue(g.directed_index(e.edge_id, e.other)));
        }
        CHECK(pt.t_red(v) == mx);
        CHECK(pt.t_blue(v) == mn);
    }
}

TEST_CASE("max of two exponentials has mean 1.5") {
    Rng rng = make_stream(13);
    const MultiGraph g = MultiGraph::from_edges(3, {{1, 2}, {2, 3}}, true);
    double sum = 0.0;
    const int reps = 20000;
    for (int i = 0; i < reps; ++i) {
        const PassageTimes pt = PassageTimes::draw(g, 1.0, rng);
        sum += pt.t_red(2);
    }
    const double mean = sum / reps;
    const double se = std::sqrt(1.25 / reps);
    CHECK(std::abs(mean - 1.5) < 3.0 * se);
}

TEST_CASE("quenched run on the seed edge alone") {
    const MultiGraph g = MultiGraph::from_edges(1, {}, true);
    const PassageTimes pt =
        PassageTimes::from_times(g, 1.0, {0.1, 0.2}, {0.7, 99.0});
    const Outcome out = run_quenched(g, pt);
    CHECK(out.range() == 1);
    CHECK(out.ever_red == std::vector<int>{1});
    CHECK(out.blue_time[1] == 0.7);
    CHECK(out.fixation_time == 0.7);
    check_outcome_invariants(g, out);
}

TEST_CASE("quenched run follows the hand trace on the short path") {
    // vertices 1,2 with edge {1,2} (id 0) and seed edge (id 1);
    // directions: 0 = 1->2, 1 = 2->1, 2 = 0->1, 3 = 1->0
    const MultiGraph g = MultiGraph::from_edges(2, {{1, 2}}, true);

    SUBCASE("red escapes to vertex 2") {
        const PassageTimes pt = PassageTimes::from_times(
            g, 1.0, {0.3, 99.0, 99.0, 99.0}, {0.4, 99.0, 0.5, 99.0});
        const Outcome out = run_quenched(g, pt);
        CHECK(out.red_time[2] == doctest::Approx(0.3));
        CHECK(out.blue_time[1] == doctest::Approx(0.5));
        CHECK(out.blue_time[2] == doctest::Approx(0.9));
        CHECK(out.range() == 2);
        CHECK(out.fixation_time == doctest::Approx(0.9));
        check_outcome_invariants(g, out);
    }

    SUBCASE("blue cuts the red clock") {
        const PassageTimes pt = PassageTimes::from_times(
            g, 1.0, {0.7, 99.0, 99.0, 99.0}, {0.4, 99.0, 0.5, 99.0});
        const Outcome out = run_quenched(g, pt);
        CHECK(std::isinf(out.red_time[2]));
        CHECK(out.range() == 1);
        check_outcome_invariants(g, out);
    }
}

TEST_CASE("quenched run is a pure function of its inputs") {
    Rng rng = make_stream(14);
    const MultiGraph g = MultiGraph::sample(DegreeModel::regular(3), 200, rng);
    const PassageTimes pt = PassageTimes::draw(g, 1.0, rng);
    const Outcome a = run_quenched(g, pt);
    const Outcome b = run_quenched(g, pt);
    CHECK(a.red_time == b.red_time);
    CHECK(a.blue_time == b.blue_time);
    CHECK(a.ever_red == b.ever_red);

    // mismatched pairing is a structural error
    const MultiGraph other = MultiGraph::sample(DegreeModel::regular(3), 201, rng);
    CHECK_THROWS_AS(run_quenched(other, pt), std::invalid_argument);
}

TEST_CASE("self-loops are inert in both engines") {
    const MultiGraph g = MultiGraph::from_edges(2, {{1, 2}, {2, 2}}, true);
    // directions: 0=1->2, 1=2->1, 2/3 self-loop, 4=0->1, 5=1->0
    const PassageTimes pt = PassageTimes::from_times(
        g, 5.0, {0.1, 99, 0.001, 0.001, 99, 99}, {0.3, 99, 0.001, 0.001, 0.5, 99});
    const Outcome out = run_quenched(g, pt);
    CHECK(out.range() == 2);  // loop times never fire despite being tiny
    CHECK(out.red_time[2] == doctest::Approx(0.1));
    CHECK(out.blue_time[2] == doctest::Approx(0.8));

    Rng rng = make_stream(15);
    for (int rep = 0; rep < 50; ++rep) {
        const Outcome o = run_gillespie(g, 2.0, rng);
        check_outcome_invariants(g, o);
    }
}

TEST_CASE("gillespie on tiny fixtures") {
    Rng rng = make_stream(16);
    {
        const MultiGraph g = MultiGraph::from_edges(1, {}, true);
        for (int i = 0; i < 20; ++i) CHECK(run_gillespie(g, 3.0, rng).range() == 1);
    }
    {
        // path 0-1-2: first race is Exp(lambda) vs Exp(1)
        const MultiGraph g = MultiGraph::from_edges(2, {{1, 2}}, true);
        const int reps = 20000;
        int spread = 0;
        for (int i = 0; i < reps; ++i)
            spread += run_gillespie(g, 1.0, rng).range() == 2 ? 1 : 0;
        const double p = static_cast<double>(spread) / reps;
        const double se = std::sqrt(0.25 / reps);
        CHECK(std::abs(p - 0.5) < 4.0 * se);
    }
    {
        // star: red at rate 100 beats blue almost always
        const MultiGraph g = MultiGraph::from_edges(3, {{1, 2}, {1, 3}}, true);
        const int reps = 2000;
        int full = 0;
        for (int i = 0; i < reps; ++i)
            full += run_gillespie(g, 100.0, rng).range() == 3 ? 1 : 0;
        CHECK(static_cast<double>(full) / reps > 0.95);
    }
}

namespace {

// two-sample chi-square over range histograms, 1% significance; critical
// values for dof 1..4
double chi2_crit(int dof) {
    constexpr double crit[] = {6.6349, 9.2103, 11.3449, 13.2767};
    REQUIRE(dof >= 1);
    REQUIRE(dof <= 4);
    return crit[dof - 1];
}

void check_engines_agree(const MultiGraph& g, double lambda, int reps, Rng& rng) {
    const int n = g.vertex_count();
    std::vector<long long> qc(n + 1, 0), gc(n + 1, 0);
    for (int i = 0; i < reps; ++i) {
        const PassageTimes pt = PassageTimes::draw(g, lambda, rng);
        ++qc[run_quenched(g, pt).range()];
        ++gc[run_gillespie(g, lambda, rng).range()];
    }
    double chi2 = 0.0;
    int bins = 0;
    for (int k = 0; k <= n; ++k) {
        const double col = static_cast<double>(qc[k] + gc[k]);
        if (col == 0.0) continue;
        ++bins;
        const double e = col / 2.0;
        chi2 += (qc[k] - e) * (qc[k] - e) / e + (gc[k] - e) * (gc[k] - e) / e;
    }
    CHECK(chi2 <= chi2_crit(std::max(1, bins - 1)));
}

} // namespace

TEST_CASE("parallel edges act as independent channels in both engines") {
    // double edge between 1 and 2: spreading and chasing rates double
    const MultiGraph g = MultiGraph::from_edges(2, {{1, 2}, {1, 2}}, true);
    Rng rng = make_stream(23);
    check_engines_agree(g, 1.0, 20000, rng);

    // spot-check the doubled spreading rate: P(2 ever red) should match
    // 2 lambda / (2 lambda + 1) at lambda = 1
    int hits = 0;
    const int reps = 30000;
    for (int i = 0; i < reps; ++i)
        hits += run_gillespie(g, 1.0, rng).range() == 2 ? 1 : 0;
    const double p = static_cast<double>(hits) / reps;
    CHECK(std::abs(p - 2.0 / 3.0) < 4.0 * std::sqrt(2.0 / 9.0 / reps));
}

TEST_CASE("engines agree away from the unit rate") {
    const MultiGraph g = MultiGraph::from_edges(3, {{1, 2}, {2, 3}, {1, 3}}, true);
    Rng rng = make_stream(24);
    check_engines_agree(g, 0.3, 15000, rng);
    check_engines_agree(g, 5.0, 15000, rng);
    // a 5-vertex graph with a self-loop and a parallel edge
    const MultiGraph h = MultiGraph::from_edges(
        5, {{1, 2}, {1, 2}, {2, 3}, {3, 3}, {3, 4}, {4, 5}, {2, 5}}, true);
    check_engines_agree(h, 1.2, 15000, rng);
}

TEST_CASE("gillespie is deterministic given the stream") {
    const MultiGraph g = MultiGraph::from_edges(3, {{1, 2}, {2, 3}, {1, 3}}, true);
    Rng a = make_stream(99, 1);
    Rng b = make_stream(99, 1);
    const Outcome oa = run_gillespie(g, 0.8, a);
    const Outcome ob = run_gillespie(g, 0.8, b);
    CHECK(oa.red_time == ob.red_time);
    CHECK(oa.blue_time == ob.blue_time);
}

TEST_CASE("outcome invariants hold across random graphs and engines") {
    Rng rng = make_stream(17);
    const DegreeModel mixed = DegreeModel::from_pmf({0.1, 0.3, 0.2, 0.3, 0.1});
    for (int rep = 0; rep < 40; ++rep) {
        const DegreeModel& model = rep % 2 == 0
                                       ? static_cast<const DegreeModel&>(mixed)
                                       : DegreeModel::regular(3);
        const MultiGraph g = MultiGraph::sample(model, 60 + rep, rng);
        const double lambda = 0.2 + 0.4 * (rep % 5);
        const PassageTimes pt = PassageTimes::draw(g, lambda, rng);
        check_outcome_invariants(g, run_quenched(g, pt));
        check_outcome_invariants(g, run_gillespie(g, lambda, rng));
    }
}

TEST_CASE("trace events are ordered and complete") {
    Rng rng = make_stream(18);
    const MultiGraph g = MultiGraph::sample(DegreeModel::regular(3), 50, rng);
    const PassageTimes pt = PassageTimes::draw(g, 2.0, rng);
    std::vector<TraceEvent> trace;
    const Outcome out = run_quenched(g, pt, &trace);
    REQUIRE(trace.size() >= 2);
    for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i].t >= trace[i - 1].t);
    long long reds = 0, blues = 0;
    for (const TraceEvent& ev : trace) (ev.color == 'r' ? reds : blues) += 1;
    CHECK(reds == out.range());
    CHECK(blues == out.range() + 1);  // every red turns blue; the seed starts blue
}

TEST_CASE("path survival") {
    Rng rng = make_stream(19);
    for (int i = 0; i < 100; ++i) CHECK(run_path(1, 0.3, rng));
    {
        const int reps = 30000;
        int hits = 0;
        for (int i = 0; i < reps; ++i) hits += run_path(2, 3.0, rng) ? 1 : 0;
        const double p = static_cast<double>(hits) / reps;
        const double se = std::sqrt(0.75 * 0.25 / reps);
        CHECK(std::abs(p - 0.75) < 4.0 * se);
    }
    {
        const int reps = 30000;
        int hits = 0;
        for (int i = 0; i < reps; ++i) hits += run_path(2, 1.0, rng) ? 1 : 0;
        const double p = static_cast<double>(hits) / reps;
        CHECK(std::abs(p - 0.5) < 4.0 * std::sqrt(0.25 / reps));
    }
    CHECK_THROWS_AS(run_path(0, 1.0, rng), std::invalid_argument);
}

TEST_CASE("path reach never exceeds the endpoint and bounds A_k") {
    Rng rng = make_stream(20);
    for (int i = 0; i < 2000; ++i) {
        const int reach = run_path_reach(10, 0.8, rng);
        CHECK(reach >= 1);
        CHECK(reach <= 10);
    }
}

TEST_CASE("tree engine basics") {
    Rng rng = make_stream(21);
    // at depth 1, reaching the depth is exactly winning one first-level race
    for (int rep = 0; rep < 200; ++rep) {
        const TreeOutcome t = run_tree(DegreeModel::regular(2), DegreeModel::regular(2),
                                       1, 1.0, rng);
        CHECK(t.reached_depth == (t.range > 1));
    }
    CHECK_THROWS_AS(
        run_tree(DegreeModel::regular(2), DegreeModel::regular(2), 31, 1.0, rng),
        std::invalid_argument);
    // a tiny node budget flags truncation in the supercritical regime
    int truncated = 0;
    for (int rep = 0; rep < 20; ++rep) {
        const TreeOutcome t = run_tree(DegreeModel::regular(3), DegreeModel::regular(3),
                                       20, 50.0, rng, 500);
        truncated += t.truncated ? 1 : 0;
        if (t.truncated) CHECK(t.range >= 500);
    }
    CHECK(truncated > 0);
}

TEST_CASE("tree survival phases at the critical scale") {
    Rng rng = make_stream(22);
    const DegreeModel off = DegreeModel::regular(2);
    // subcritical: lambda far below Lambda(2) ~ 0.1716
    {
        int reached = 0;
        for (int rep = 0; rep < 1000; ++rep)
            reached += run_tree(off, off, 12, 0.05, rng).reached_depth ? 1 : 0;
        CHECK(static_cast<double>(reached) / 1000 < 0.01);
    }
    // supercritical: lambda = 1 far above; band frozen from a pilot run
    {
        int reached = 0;
        for (int rep = 0; rep < 1000; ++rep)
            reached += run_tree(off, off, 12, 1.0, rng).reached_depth ? 1 : 0;
        CHECK(static_cast<double>(reached) / 1000 > 0.2);
    }
}
