#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chase/degree_model.hpp"
#include "chase/rng.hpp"

namespace chase {

struct AdjEntry {
    std::uint32_t edge_id;
    std::uint32_t other;
};

// Rooted multigraph from the configuration model. Vertices are 0..n where 0
// is the blue seed and 1 the root; parallel edges and self-loops are kept.
// A self-loop contributes two adjacency entries at its vertex, so degree(v)
// is always the adjacency length and sum of degrees = 2 * edge count.
class MultiGraph {
public:
    // Uniform perfect matching of the half-edge multiset given by degrees
    // (degrees[i] belongs to vertex i+1). No seed edge is attached. The sum
    // of degrees must be even.
    static MultiGraph match_half_edges(const std::vector<int>& degrees, Rng& rng);

    // Full sampling pipeline: i.i.d. degrees from the model, a parity
    // half-edge at vertex n when the sum is odd, a uniform matching, and the
    // seed edge {0,1}.
    static MultiGraph sample(const DegreeModel& model, int n, Rng& rng);

    // Fixture builder: vertices 1..n with the given edge list (endpoints in
    // 1..n), optionally attaching the seed edge last.
    static MultiGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                                 bool attach_seed);

    int vertex_count() const { return n_; }  // non-seed vertices 1..n
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    std::span<const AdjEntry> neighbors(int v) const { return adj_[v]; }
    std::pair<int, int> edge(int eid) const { return edges_[eid]; }
    bool is_self_loop(int eid) const {
        return edges_[eid].first == edges_[eid].second;
    }
    bool has_seed_edge() const { return seed_edge_ >= 0; }
    int seed_edge_id() const { return seed_edge_; }
    int raw_degree(int v) const { return raw_degrees_[v]; }
    int parity_bit() const { return parity_bit_; }

    // Directed edge-instance index: 2*eid for traversal first->second as
    // stored, 2*eid+1 for the reverse. `from` must be an endpoint.
    int directed_index(int eid, int from) const {
        return 2 * eid + (edges_[eid].first == from ? 0 : 1);
    }

    // Text format: header "n=<n> seed_edge=<0-1|none> parity=<0|1>", then one
    // "u v edge_id" line per edge instance. Round-trips byte-exactly.
    std::string serialize() const;
    static MultiGraph deserialize(const std::string& text);

private:
    MultiGraph() = default;
    void add_edge(int u, int v);
    void set_raw_degrees(std::vector<int> raw, int parity);

    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<AdjEntry>> adj_;
    std::vector<int> raw_degrees_;
    int parity_bit_ = 0;
    int seed_edge_ = -1;
};

struct ComponentLabels {
    std::vector<int> label;        // label[v]; -1 for vertices outside the scope
    std::vector<int> sizes;        // component sizes, sorted descending
    std::vector<int> label_sizes;  // size by label, unsorted
    int largest() const { return sizes.empty() ? 0 : sizes.front(); }
    int size_of_vertex(int v) const {
        return label[v] < 0 ? 0 : label_sizes[label[v]];
    }
};

// Connected components over vertices 1..n (or 0..n with include_seed) via
// disjoint-set union.
ComponentLabels components(const MultiGraph& g, bool include_seed);

// Exact counts |Gamma_0|..|Gamma_k_max| of vertex self-avoiding paths from
// the root, never using the seed edge. Parallel edges give distinct paths.
// k_max is capped at 12.
std::vector<long long> count_sa_paths(const MultiGraph& g, int k_max);

} // namespace chase
