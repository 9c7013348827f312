#include "chase/engine.hpp"

#include <cstdint>
#include <deque>
#include <limits>
#include <queue>
#include <stdexcept>

namespace chase {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Color : std::uint8_t { White, Red, Blue };

struct QueuedEvent {
    double t;
    std::uint64_t id;   // tie-break: (time, event id) lexicographic
    int did;            // directed edge instance, tail -> head
    bool is_red;
    bool operator>(const QueuedEvent& o) const {
        if (t != o.t) return t > o.t;
        return id > o.id;
    }
};

} // namespace

Outcome run_quenched(const MultiGraph& g, const PassageTimes& pt,
                     std::vector<TraceEvent>* trace) {
    if (!pt.matches(g))
        throw std::invalid_argument("passage times were drawn for a different graph");
    const int n = g.vertex_count();

    Outcome out;
    out.red_time.assign(n + 1, kInf);
    out.blue_time.assign(n + 1, kInf);
    std::vector<Color> color(n + 1, Color::White);

    std::priority_queue<QueuedEvent, std::vector<QueuedEvent>, std::greater<QueuedEvent>> queue;
    std::uint64_t next_id = 0;

    const auto schedule_from_red = [&](int v, double t) {
        // v just turned red: red arrivals to white neighbors, and blue
        // arrivals from already-blue neighbors (their chase clock starts now)
        for (const AdjEntry& e : g.neighbors(v)) {
            if (g.is_self_loop(e.edge_id)) continue;
            const int w = static_cast<int>(e.other);
            if (color[w] == Color::White)
                queue.push({t + pt.red(g.directed_index(e.edge_id, v)), next_id++,
                            g.directed_index(e.edge_id, v), true});
            else if (color[w] == Color::Blue)
                queue.push({t + pt.blue(g.directed_index(e.edge_id, w)), next_id++,
                            g.directed_index(e.edge_id, w), false});
        }
    };
    const auto schedule_from_blue = [&](int v, double t) {
        // v just turned blue: chase clocks toward currently red neighbors
        for (const AdjEntry& e : g.neighbors(v)) {
            if (g.is_self_loop(e.edge_id)) continue;
            const int w = static_cast<int>(e.other);
            if (color[w] == Color::Red)
                queue.push({t + pt.blue(g.directed_index(e.edge_id, v)), next_id++,
                            g.directed_index(e.edge_id, v), false});
        }
    };

    color[0] = Color::Blue;
    out.blue_time[0] = 0.0;
    color[1] = Color::Red;
    out.red_time[1] = 0.0;
    out.ever_red.push_back(1);
    if (trace) {
        trace->push_back({0.0, 0, 'b', -1});
        trace->push_back({0.0, 1, 'r', -1});
    }
    schedule_from_red(1, 0.0);

    while (!queue.empty()) {
        const QueuedEvent ev = queue.top();
        queue.pop();
        const int eid = ev.did / 2;
        const auto [a, b] = g.edge(eid);
        const int tail = (ev.did % 2 == 0) ? a : b;
        const int head = (ev.did % 2 == 0) ? b : a;
        if (ev.is_red) {
            if (color[tail] != Color::Red || color[head] != Color::White) continue;
            color[head] = Color::Red;
            out.red_time[head] = ev.t;
            out.ever_red.push_back(head);
            if (trace) trace->push_back({ev.t, head, 'r', eid});
            schedule_from_red(head, ev.t);
        } else {
            if (color[head] != Color::Red) continue;
            color[head] = Color::Blue;
            out.blue_time[head] = ev.t;
            if (trace) trace->push_back({ev.t, head, 'b', eid});
            schedule_from_blue(head, ev.t);
        }
    }

    out.fixation_time = 0.0;
    for (int v : out.ever_red)
        if (out.blue_time[v] > out.fixation_time) out.fixation_time = out.blue_time[v];
    return out;
}

namespace {

// dynamic set of directed edge instances with O(1) insert/remove
struct ActiveSet {
    std::vector<int> items;
    std::vector<std::uint32_t> pos;  // by directed index; npos when absent
    static constexpr std::uint32_t npos = 0xffffffffu;
    explicit ActiveSet(int dids) : pos(dids, npos) {}
    void insert(int did) {
        if (pos[did] != npos) return;
        pos[did] = static_cast<std::uint32_t>(items.size());
        items.push_back(did);
    }
    void remove(int did) {
        const auto p = pos[did];
        if (p == npos) return;
        items[p] = items.back();
        pos[items[p]] = p;
        items.pop_back();
        pos[did] = npos;
    }
    std::size_t size() const { return items.size(); }
};

} // namespace

Outcome run_gillespie(const MultiGraph& g, double lambda, Rng& rng,
                      std::vector<TraceEvent>* trace) {
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    const int n = g.vertex_count();

    Outcome out;
    out.red_time.assign(n + 1, kInf);
    out.blue_time.assign(n + 1, kInf);
    std::vector<Color> color(n + 1, Color::White);

    ActiveSet spread(2 * g.edge_count());  // red tail -> white head, rate lambda each
    ActiveSet chase(2 * g.edge_count());   // blue tail -> red head, rate 1 each

    const auto on_red = [&](int v) {
        for (const AdjEntry& e : g.neighbors(v)) {
            if (g.is_self_loop(e.edge_id)) continue;
            const int w = static_cast<int>(e.other);
            spread.remove(g.directed_index(e.edge_id, w));  // v is no longer white
            if (color[w] == Color::White)
                spread.insert(g.directed_index(e.edge_id, v));
            else if (color[w] == Color::Blue)
                chase.insert(g.directed_index(e.edge_id, w));
        }
    };
    const auto on_blue = [&](int v) {
        for (const AdjEntry& e : g.neighbors(v)) {
            if (g.is_self_loop(e.edge_id)) continue;
            const int w = static_cast<int>(e.other);
            spread.remove(g.directed_index(e.edge_id, v));  // v no longer spreads
            chase.remove(g.directed_index(e.edge_id, w));   // v is no longer red
            if (color[w] == Color::Red)
                chase.insert(g.directed_index(e.edge_id, v));
        }
    };

    color[0] = Color::Blue;
    out.blue_time[0] = 0.0;
    color[1] = Color::Red;
    out.red_time[1] = 0.0;
    out.ever_red.push_back(1);
    if (trace) {
        trace->push_back({0.0, 0, 'b', -1});
        trace->push_back({0.0, 1, 'r', -1});
    }
    on_red(1);  // seeds the 0->1 chase clock: vertex 0 is already blue

    double t = 0.0;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    while (spread.size() + chase.size() > 0) {
        const double spread_rate = lambda * static_cast<double>(spread.size());
        const double total = spread_rate + static_cast<double>(chase.size());
        t += std::exponential_distribution<double>(total)(rng);
        const bool is_spread = unif(rng) * total < spread_rate;
        const auto& set = is_spread ? spread : chase;
        const int did = set.items[std::uniform_int_distribution<std::size_t>(
            0, set.size() - 1)(rng)];
        const int eid = did / 2;
        const auto [a, b] = g.edge(eid);
        const int head = (did % 2 == 0) ? b : a;
        if (is_spread) {
            color[head] = Color::Red;
            out.red_time[head] = t;
            out.ever_red.push_back(head);
            if (trace) trace->push_back({t, head, 'r', eid});
            on_red(head);
        } else {
            color[head] = Color::Blue;
            out.blue_time[head] = t;
            if (trace) trace->push_back({t, head, 'b', eid});
            on_blue(head);
        }
    }

    out.fixation_time = 0.0;
    for (int v : out.ever_red)
        if (out.blue_time[v] > out.fixation_time) out.fixation_time = out.blue_time[v];
    return out;
}

int run_path_reach(int k_max, double lambda, Rng& rng) {
    if (k_max < 1) throw std::invalid_argument("path length must be at least 1");
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    // state (blue front, red front); red advances with probability
    // lambda/(1+lambda) per jump, blue otherwise; fixation when they meet
    int red = 1, blue = 0;
    const double p_red = lambda / (1.0 + lambda);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    while (true) {
        if (red == k_max) return red;
        if (unif(rng) < p_red) {
            ++red;
        } else {
            ++blue;
            if (blue == red) return red;
        }
    }
}

bool run_path(int k, double lambda, Rng& rng) {
    return run_path_reach(k, lambda, rng) == k;
}

TreeOutcome run_tree(const DegreeModel& offspring, const DegreeModel& root_law,
                     int depth, double lambda, Rng& rng, long long node_budget) {
    if (depth < 1 || depth > 30)
        throw std::invalid_argument("tree depth must lie in 1..30");
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");

    struct Node {
        int depth;
        double slack;  // blue time minus red time at this node, > 0
    };

    TreeOutcome out;
    std::exponential_distribution<double> red_dist(lambda);
    std::exponential_distribution<double> blue_dist(1.0);

    std::deque<Node> frontier;
    // root is red at 0; the seed above it is blue at 0, so the chase clock
    // into the root starts immediately
    frontier.push_back({0, blue_dist(rng)});
    out.range = 1;

    while (!frontier.empty()) {
        const Node node = frontier.front();
        frontier.pop_front();
        if (node.depth == depth) continue;
        const int children =
            (node.depth == 0 ? root_law : offspring).sample(rng);
        for (int c = 0; c < children; ++c) {
            const double tau = red_dist(rng);
            if (tau >= node.slack) continue;  // blue cut this branch
            ++out.range;
            if (node.depth + 1 == depth) out.reached_depth = true;
            if (out.range >= node_budget) {
                out.truncated = true;
                return out;
            }
            frontier.push_back({node.depth + 1, node.slack - tau + blue_dist(rng)});
        }
    }
    return out;
}

} // namespace chase
