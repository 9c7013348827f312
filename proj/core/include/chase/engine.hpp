#pragma once

#include <vector>

#include "chase/degree_model.hpp"
#include "chase/multigraph.hpp"
#include "chase/passage_times.hpp"
#include "chase/rng.hpp"

namespace chase {

struct TraceEvent {
    double t;
    int v;
    char color;    // 'r' or 'b'
    int via_edge;  // edge instance id, -1 for the initial colorings
};

// Full record of one chase-escape run. Times are +infinity for colorings
// that never happened; blue_time[0] = 0 and red_time[1] = 0 always.
struct Outcome {
    std::vector<double> red_time;
    std::vector<double> blue_time;
    std::vector<int> ever_red;  // in order of coloring
    double fixation_time = 0.0; // last red vertex turned blue
    int range() const { return static_cast<int>(ever_red.size()); }
};

// Resolve the coloring times from quenched passage times by increasing-time
// event processing with lazy invalidation. Pure function of (g, pt).
Outcome run_quenched(const MultiGraph& g, const PassageTimes& pt,
                     std::vector<TraceEvent>* trace = nullptr);

// Direct continuous-time Markov chain simulation: blue->red pairs fire at
// rate 1 per edge instance, red->white pairs at rate lambda. Distributional
// oracle for run_quenched.
Outcome run_gillespie(const MultiGraph& g, double lambda, Rng& rng,
                      std::vector<TraceEvent>* trace = nullptr);

// Furthest vertex ever red in chase-escape on the path 0,1,...,k_max with 0
// blue and 1 red; simulated through the embedded jump chain of the front
// positions, which determines every "ever red" event.
int run_path_reach(int k_max, double lambda, Rng& rng);

// Whether vertex k is ever red on the path (the event A_k).
bool run_path(int k, double lambda, Rng& rng);

struct TreeOutcome {
    bool reached_depth = false;
    long long range = 0;      // red vertices within the truncation
    bool truncated = false;   // node budget hit before the frontier died
};

// Chase-escape on a lazily grown Galton-Watson tree: the root's child count
// follows root_law, later generations offspring. Nodes are created only when
// their parent turns red, so memory tracks the red range.
TreeOutcome run_tree(const DegreeModel& offspring, const DegreeModel& root_law,
                     int depth, double lambda, Rng& rng,
                     long long node_budget = 10'000'000);

} // namespace chase
