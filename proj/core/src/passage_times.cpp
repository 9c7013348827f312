#include "chase/passage_times.hpp"

#include <limits>
#include <stdexcept>

namespace chase {

PassageTimes PassageTimes::draw(const MultiGraph& g, double lambda, Rng& rng) {
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    PassageTimes pt;
    pt.lambda_ = lambda;
    pt.vertex_count_ = g.vertex_count();
    pt.edge_count_ = g.edge_count();
    const int m = g.edge_count();
    pt.red_.resize(2 * m);
    pt.blue_.resize(2 * m);
    std::exponential_distribution<double> red_dist(lambda);
    std::exponential_distribution<double> blue_dist(1.0);
    for (int did = 0; did < 2 * m; ++did) pt.red_[did] = red_dist(rng);
    for (int did = 0; did < 2 * m; ++did) pt.blue_[did] = blue_dist(rng);
    pt.build_summaries(g);
    return pt;
}

PassageTimes PassageTimes::from_times(const MultiGraph& g, double lambda,
                                      std::vector<double> red, std::vector<double> blue) {
    const std::size_t want = 2 * static_cast<std::size_t>(g.edge_count());
    if (red.size() != want || blue.size() != want)
        throw std::invalid_argument("need one red and one blue time per edge direction");
    PassageTimes pt;
    pt.lambda_ = lambda;
    pt.vertex_count_ = g.vertex_count();
    pt.edge_count_ = g.edge_count();
    pt.red_ = std::move(red);
    pt.blue_ = std::move(blue);
    pt.build_summaries(g);
    return pt;
}

void PassageTimes::build_summaries(const MultiGraph& g) {
    const int n = g.vertex_count();
    t_red_.assign(n + 1, 0.0);
    t_blue_.assign(n + 1, std::numeric_limits<double>::infinity());
    for (int v = 1; v <= n; ++v) {
        for (const AdjEntry& e : g.neighbors(v)) {
            if (g.is_self_loop(e.edge_id)) continue;
            const bool seed = static_cast<int>(e.edge_id) == g.seed_edge_id();
            if (!seed) {
                const double r = red_[g.directed_index(e.edge_id, v)];
                if (r > t_red_[v]) t_red_[v] = r;
            }
            const double b = blue_[g.directed_index(e.edge_id, e.other)];
            if (b < t_blue_[v]) t_blue_[v] = b;
        }
    }
}

} // namespace chase
