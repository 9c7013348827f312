#pragma once

#include <vector>

#include "chase/multigraph.hpp"
#include "chase/rng.hpp"

namespace chase {

// Quenched per-direction traversal times for one realization of the
// dynamics. For a directed edge instance u->v, red(did) is the time for red
// at u to traverse to v (Exp with rate lambda) and blue(did) the time for
// blue at u to overtake red at v (Exp with rate 1). Self-loop directions are
// drawn but inert, as are the red directions on the seed edge.
class PassageTimes {
public:
    static PassageTimes draw(const MultiGraph& g, double lambda, Rng& rng);

    // Fixture constructor: explicit per-direction times, indexed by
    // 2*eid + 0 (first->second) and 2*eid + 1 (second->first).
    static PassageTimes from_times(const MultiGraph& g, double lambda,
                                   std::vector<double> red, std::vector<double> blue);

    double lambda() const { return lambda_; }
    double red(int did) const { return red_[did]; }
    double blue(int did) const { return blue_[did]; }

    // max over outbound red times at v, excluding self-loops and the seed
    // direction at the root; 0 for an empty set
    double t_red(int v) const { return t_red_[v]; }
    // min over inbound blue times at v, excluding self-loops, including the
    // seed edge at the root; +infinity for an empty set
    double t_blue(int v) const { return t_blue_[v]; }

    bool matches(const MultiGraph& g) const {
        return vertex_count_ == g.vertex_count() && edge_count_ == g.edge_count();
    }

private:
    PassageTimes() = default;
    void build_summaries(const MultiGraph& g);

    double lambda_ = 0.0;
    int vertex_count_ = 0;
    int edge_count_ = 0;
    std::vector<double> red_;
    std::vector<double> blue_;
    std::vector<double> t_red_;
    std::vector<double> t_blue_;
};

} // namespace chase
